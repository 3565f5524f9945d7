#include "triopo/negativity.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "triopo/errors.hpp"

namespace triopo {

namespace {

constexpr double kPatternTolerance = 1e-6;

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve_symmetric(
    const Eigen::Ref<const Eigen::MatrixXd>& m, bool vectors) {
  if (m.rows() != m.cols() || m.rows() < 2)
    throw DomainError("expected a square matrix of size >= 2");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      m, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("symmetric eigen-solver failed");
  return es;
}

std::optional<double> phase_beta(const Eigen::VectorXd& vector) {
  using namespace quad;
  const Eigen::VectorXd v = vector.normalized();
  if (std::abs(v(p0)) > kPatternTolerance || std::abs(v(p1)) > kPatternTolerance ||
      std::abs(v(p2)) > kPatternTolerance)
    return std::nullopt;
  if (std::abs(v(q1)) < kPatternTolerance || std::abs(v(q1) - v(q2)) > kPatternTolerance)
    return std::nullopt;
  return -v(q0) / v(q1);
}

}  // namespace

std::pair<double, double> smallest_two(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  const auto es = solve_symmetric(m, false);
  return {es.eigenvalues()(0), es.eigenvalues()(1)};
}

double log_negativity(double l1, double l2) {
  if (!(l1 > 0.0) || !(l2 > 0.0))
    throw DomainError("eigenvalues must be positive, got " + std::to_string(l1) + ", " +
                      std::to_string(l2));
  return std::max(0.0, -std::log2(l1 * l2) / 2.0);
}

NegativityResult en_diff(const SpectralMatrix& sm) {
  const Eigen::MatrixXd full = sm.re();
  const Eigen::MatrixXd reduced = full.block(2, 2, 4, 4);

  const auto es_full = solve_symmetric(full, true);
  const auto es_red = solve_symmetric(reduced, false);

  NegativityResult r;
  r.eigvals_full = es_full.eigenvalues();
  r.eigvals_reduced = es_red.eigenvalues();
  r.en_full = log_negativity(r.eigvals_full(0), r.eigvals_full(1));
  r.en_reduced = log_negativity(r.eigvals_reduced(0), r.eigvals_reduced(1));
  r.en_diff = r.en_full - r.en_reduced;
  // The phase combination is the second mode at low frequency and the first
  // one above the twin bandwidth.
  r.beta = phase_beta(es_full.eigenvectors().col(1));
  if (!r.beta) r.beta = phase_beta(es_full.eigenvectors().col(0));
  return r;
}

NegativityResult en_diff(const OpoParams& params, double omega) {
  return en_diff(output_spectrum(params, omega));
}

double ppt_log_negativity(const Eigen::Ref<const Eigen::MatrixXd>& cov, int lone) {
  const auto n = cov.rows();
  if (n != cov.cols() || n % 2 != 0 || n == 0) throw DomainError("covariance must be 2N x 2N");
  const int modes = static_cast<int>(n / 2);
  if (lone < 0 || lone >= modes) throw DomainError("lone mode out of range");

  // Transposition flips the sign of the lone mode's phase quadrature.
  Eigen::VectorXd flip = Eigen::VectorXd::Ones(n);
  flip(2 * lone + 1) = -1;
  const Eigen::MatrixXd transposed = flip.asDiagonal() * cov * flip.asDiagonal();

  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1;
    omega(2 * k + 1, 2 * k) = -1;
  }
  // Eigenvalues of omega V come in pairs +-i nu.
  Eigen::EigenSolver<Eigen::MatrixXd> es(omega * transposed, false);
  if (es.info() != Eigen::Success) throw NumericError("symplectic eigen-solver failed");
  std::vector<double> nu;
  for (Eigen::Index i = 0; i < n; ++i) nu.push_back(std::abs(es.eigenvalues()(i).imag()));
  std::sort(nu.begin(), nu.end());

  double total = 0;
  for (std::size_t i = 0; i < nu.size(); i += 2) {
    const double v = 0.5 * (nu[i] + nu[i + 1]);
    if (v < 1.0) total -= std::log2(v);
  }
  return total;
}

double ppt_symplectic_check(const SpectralMatrix& sm, Mode lone) {
  return ppt_log_negativity(sm.re(), static_cast<int>(lone));
}

}  // namespace triopo
