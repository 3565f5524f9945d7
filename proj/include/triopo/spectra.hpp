#pragma once

#include "triopo/opo_model.hpp"
#include "triopo/types.hpp"

namespace triopo {

/// Output noise spectral matrix at one analysis frequency.
///
/// `s` is Hermitian, ordered (p0, q0, p1, q1, p2, q2), normalized so that the
/// vacuum gives the identity. Its real part is the measurable covariance
/// matrix of the output quadratures.
struct SpectralMatrix {
  double omega = 0;  // in units of 1/tau
  CMat6 s = CMat6::Identity();

  Mat6 re() const { return s.real(); }
};

/// Frequency-domain input-output solution of the linearized model.
///
/// G = (-i omega - a)^-1, M = c_out G b_c - 1, N = c_out G b_v, and
/// s = M M^dagger + N N^dagger evaluated in the sum/difference basis, then
/// rotated to the physical basis. Throws SingularFrequencyError for
/// omega <= 0 (q- is undamped) and NumericError if the resolvent is singular.
SpectralMatrix output_spectrum(const OpoParams& params, double omega);

/// Same, for an explicit drift model (used by negative controls).
SpectralMatrix output_spectrum(const DriftModel& model, double omega);

/// Variance of sum_j c_j x_j: c^T re(s) c.
double variance(const SpectralMatrix& sm, const Vec6& c);

/// Symmetrized cross-spectrum c1^T re(s) c2.
double covariance(const SpectralMatrix& sm, const Vec6& c1, const Vec6& c2);

}  // namespace triopo
