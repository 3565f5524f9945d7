#pragma once

#include <optional>
#include <utility>

#include "triopo/spectra.hpp"

namespace triopo {

struct NegativityResult {
  Vec6 eigvals_full;                   // ascending eigenvalues of re(s)
  Eigen::Vector4d eigvals_reduced;     // ascending, signal-idler block (p1,q1,p2,q2)
  double en_full = 0;
  double en_reduced = 0;
  double en_diff = 0;                  // en_full - en_reduced
  // Coefficient of q0 when the eigenvector of lambda2 (or else lambda1) has
  // the form q1 + q2 - beta q0; empty when neither does.
  std::optional<double> beta;
};

/// Two smallest eigenvalues (ascending) of a real symmetric matrix.
std::pair<double, double> smallest_two(const Eigen::Ref<const Eigen::MatrixXd>& m);

/// max(0, -log2(l1 * l2) / 2). Throws DomainError unless both are > 0.
double log_negativity(double l1, double l2);

NegativityResult en_diff(const SpectralMatrix& sm);
NegativityResult en_diff(const OpoParams& params, double omega);

/// Logarithmic negativity of the bipartition lone | rest from the partially
/// transposed covariance matrix: -sum log2(nu) over symplectic eigenvalues
/// nu < 1. Cross-check only; never feeds en_diff.
double ppt_symplectic_check(const SpectralMatrix& sm, Mode lone);

/// Same for any 2N x 2N real covariance matrix ordered (p, q) per mode,
/// vacuum = identity.
double ppt_log_negativity(const Eigen::Ref<const Eigen::MatrixXd>& cov, int lone);

}  // namespace triopo
