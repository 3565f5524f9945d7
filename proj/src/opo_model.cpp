#include "triopo/opo_model.hpp"

#include <cmath>
#include <string>

#include "triopo/errors.hpp"

namespace triopo {

namespace {

void require_open_unit(const char* field, double v) {
  if (!(v > 0.0 && v < 1.0))
    throw RangeError(field, "must lie in (0, 1), got " + std::to_string(v));
}

void require_non_negative(const char* field, double v) {
  if (!(v >= 0.0) || !std::isfinite(v))
    throw RangeError(field, "must be >= 0, got " + std::to_string(v));
}

}  // namespace

void validate(const OpoParams& p) {
  require_open_unit("t0", p.t0);
  require_open_unit("t", p.t);
  require_non_negative("mu0", p.mu0);
  require_non_negative("mu", p.mu);
  require_non_negative("idler_extra_loss", p.idler_extra_loss);
  if (!(p.chi > 0.0) || !std::isfinite(p.chi))
    throw RangeError("chi", "must be > 0, got " + std::to_string(p.chi));
  if (!(p.tau > 0.0) || !std::isfinite(p.tau))
    throw RangeError("tau", "must be > 0, got " + std::to_string(p.tau));
  if (!std::isfinite(p.sigma))
    throw RangeError("sigma", "must be finite");
  if (p.sigma <= 1.0)
    throw ThresholdError("sigma = " + std::to_string(p.sigma) +
                         " is not above the oscillation threshold");
  if (p.sigma < 1.0 + kThresholdFloor)
    throw ThresholdError("sigma = " + std::to_string(p.sigma) +
                         " is too close to threshold for the linearized model");
}

OpoParams make_params(double t0, double t, double mu0, double mu, double sigma, double chi) {
  OpoParams p;
  p.t0 = t0;
  p.t = t;
  p.mu0 = mu0;
  p.mu = mu;
  p.sigma = sigma;
  p.chi = chi;
  validate(p);
  return p;
}

SteadyState steady_state(const OpoParams& p) {
  // Stationary mean field of
  //   da0/dt = -g0 a0 - chi a1 a2 + E
  //   da1/dt = -g1 a1 + chi a0 a2*,   da2/dt = -g2 a2 + chi a0 a1*
  // with E^2 = sigma E_thr^2 gives chi a0 = sqrt(g1 g2) and
  // chi^2 a1^2 = g0 g2 (sqrt(sigma) - 1), chi^2 a2^2 = g0 g1 (sqrt(sigma) - 1).
  const double g0 = p.gamma0();
  const double g1 = p.gamma();
  const double g2 = p.gamma_idler();
  const double excess = std::sqrt(p.sigma) - 1.0;

  SteadyState s;
  s.pump_amp = std::sqrt(g1 * g2) / p.chi;
  s.signal_amp = std::sqrt(g0 * g2 * excess) / p.chi;
  s.idler_amp = std::sqrt(g0 * g1 * excess) / p.chi;
  s.twin_amp = s.signal_amp;
  s.d = std::sqrt(2.0 * g0 * p.gamma() * excess);
  return s;
}

const Mat6& sum_difference_basis() {
  static const Mat6 r = [] {
    const double h = 1.0 / std::sqrt(2.0);
    Mat6 m = Mat6::Zero();
    m(0, 0) = 1;
    m(1, 1) = 1;
    // x+ = (x1 + x2)/sqrt2, x- = (x1 - x2)/sqrt2 for x in {p, q}
    for (int k = 0; k < 2; ++k) {
      const int one = 2 + k, two = 4 + k;
      m(one, one) = h;
      m(one, two) = h;
      m(two, one) = h;
      m(two, two) = -h;
    }
    return m;
  }();
  return r;
}

DriftModel drift_model(const OpoParams& p) {
  validate(p);
  const SteadyState ss = steady_state(p);

  // chi times each mean amplitude; chi itself drops out here.
  const double k0 = p.chi * ss.pump_amp;
  const double k1 = p.chi * ss.signal_amp;
  const double k2 = p.chi * ss.idler_amp;
  const double g0 = p.gamma0();
  const double g1 = p.gamma();
  const double g2 = p.gamma_idler();

  using namespace quad;
  Mat6 a = Mat6::Zero();
  a(p0, p0) = -g0;
  a(p0, p1) = -k2;
  a(p0, p2) = -k1;
  a(q0, q0) = -g0;
  a(q0, q1) = -k2;
  a(q0, q2) = -k1;

  a(p1, p1) = -g1;
  a(p1, p2) = k0;
  a(p1, p0) = k2;
  a(q1, q1) = -g1;
  a(q1, q2) = -k0;
  a(q1, q0) = k2;

  a(p2, p2) = -g2;
  a(p2, p1) = k0;
  a(p2, p0) = k1;
  a(q2, q2) = -g2;
  a(q2, q1) = -k0;
  a(q2, q0) = k1;

  Vec6 coupling, loss;
  coupling << std::sqrt(2 * p.gamma_c0()), std::sqrt(2 * p.gamma_c0()),
      std::sqrt(2 * p.gamma_c()), std::sqrt(2 * p.gamma_c()),
      std::sqrt(2 * p.gamma_c()), std::sqrt(2 * p.gamma_c());
  loss << std::sqrt(2 * p.gamma_l0()), std::sqrt(2 * p.gamma_l0()),
      std::sqrt(2 * p.gamma_l()), std::sqrt(2 * p.gamma_l()),
      std::sqrt(2 * p.gamma_l_idler()), std::sqrt(2 * p.gamma_l_idler());

  const Mat6& r = sum_difference_basis();
  DriftModel m;
  m.a = r * a * r;
  m.b_c = r * Mat6(coupling.asDiagonal()) * r;
  m.b_v = r * Mat6(loss.asDiagonal()) * r;
  m.c_out = m.b_c;
  return m;
}

DriftModel scale_coupling(DriftModel m, double scale) {
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if ((i < 2) != (j < 2)) m.a(i, j) *= scale;
  return m;
}

}  // namespace triopo
