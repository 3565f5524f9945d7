#include "triopo/spectra.hpp"

#include <cmath>
#include <string>

#include "triopo/errors.hpp"

namespace triopo {

namespace {
constexpr double kMinReciprocalCondition = 1e-14;
}

SpectralMatrix output_spectrum(const DriftModel& model, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw SingularFrequencyError("analysis frequency must be > 0, got " + std::to_string(omega));

  using cd = std::complex<double>;
  const CMat6 lhs = cd(0.0, -omega) * CMat6::Identity() - model.a.cast<cd>();
  Eigen::PartialPivLU<CMat6> lu(lhs);
  if (!(lu.rcond() > kMinReciprocalCondition))
    throw NumericError("resolvent is singular at omega = " + std::to_string(omega));
  const CMat6 g = lu.inverse();

  const CMat6 c_out = model.c_out.cast<cd>();
  const CMat6 m = c_out * g * model.b_c.cast<cd>() - CMat6::Identity();
  const CMat6 n = c_out * g * model.b_v.cast<cd>();
  const CMat6 s_pm = m * m.adjoint() + n * n.adjoint();

  const CMat6 r = sum_difference_basis().cast<cd>();
  SpectralMatrix out;
  out.omega = omega;
  out.s = r * s_pm * r;
  // exact Hermitian symmetry; removes round-off asymmetry from the products
  out.s = (0.5 * (out.s + out.s.adjoint())).eval();
  return out;
}

SpectralMatrix output_spectrum(const OpoParams& params, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw SingularFrequencyError("analysis frequency must be > 0, got " + std::to_string(omega));
  return output_spectrum(drift_model(params), omega);
}

double variance(const SpectralMatrix& sm, const Vec6& c) { return covariance(sm, c, c); }

double covariance(const SpectralMatrix& sm, const Vec6& c1, const Vec6& c2) {
  return c1.dot(sm.re() * c2);
}

}  // namespace triopo
