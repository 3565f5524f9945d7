#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "triopo/errors.hpp"
#include "triopo/opo_model.hpp"

using namespace triopo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Newton iteration on the real stationarity equations of the resonant model
//   0 = -g0 a0 - chi a1 a2 + E,  0 = -g a1 + chi a0 a2,  0 = -g a2 + chi a0 a1
// with E = sqrt(sigma) * g0 g / chi, started away from the closed form.
Eigen::Vector3d mean_field_by_newton(double g0, double g, double chi, double sigma) {
  const double drive = std::sqrt(sigma) * g0 * g / chi;
  Eigen::Vector3d x(0.7 * g / chi, 0.05 / chi, 0.03 / chi);
  for (int it = 0; it < 200; ++it) {
    Eigen::Vector3d f(-g0 * x(0) - chi * x(1) * x(2) + drive, -g * x(1) + chi * x(0) * x(2),
                      -g * x(2) + chi * x(0) * x(1));
    Eigen::Matrix3d j;
    j << -g0, -chi * x(2), -chi * x(1),
        chi * x(2), -g, chi * x(0),
        chi * x(1), chi * x(0), -g;
    const Eigen::Vector3d step = j.fullPivLu().solve(f);
    x -= step;
    if (step.norm() < 1e-16) break;
  }
  return x;
}

Eigen::VectorXcd eigenvalues(const Mat6& a) {
  Eigen::EigenSolver<Mat6> es(a, false);
  return es.eigenvalues();
}

}  // namespace

TEST_CASE("make_params accepts the default operating point", "[opo-model]") {
  const auto p = make_params(0.10, 0.02, 0, 0, 1.5, 1.0);
  CHECK_THAT(p.gamma0(), WithinAbs(0.05, 1e-15));
  CHECK_THAT(p.gamma(), WithinAbs(0.01, 1e-15));
  CHECK(p.gamma_l0() == 0.0);
  CHECK(p.gamma_l() == 0.0);
}

TEST_CASE("make_params rejects operating points at or below threshold", "[opo-model]") {
  CHECK_THROWS_AS(make_params(0.10, 0.02, 0, 0, 1.0, 1.0), ThresholdError);
  CHECK_THROWS_AS(make_params(0.10, 0.02, 0, 0, 0.5, 1.0), ThresholdError);
  CHECK_THROWS_AS(make_params(0.10, 0.02, 0, 0, 1.0 + 0.5 * kThresholdFloor, 1.0), ThresholdError);
  CHECK_NOTHROW(make_params(0.10, 0.02, 0, 0, 1.0 + kThresholdFloor, 1.0));
}

TEST_CASE("make_params names the offending field", "[opo-model]") {
  auto field_of = [](auto&& f) -> std::string {
    try {
      f();
    } catch (const RangeError& e) {
      return e.field();
    }
    return "";
  };
  CHECK(field_of([] { make_params(0.0, 0.02, 0, 0, 1.5); }) == "t0");
  CHECK(field_of([] { make_params(1.0, 0.02, 0, 0, 1.5); }) == "t0");
  CHECK(field_of([] { make_params(0.1, -0.02, 0, 0, 1.5); }) == "t");
  CHECK(field_of([] { make_params(0.1, 0.02, -1e-3, 0, 1.5); }) == "mu0");
  CHECK(field_of([] { make_params(0.1, 0.02, 0, -1e-3, 1.5); }) == "mu");
  CHECK(field_of([] { make_params(0.1, 0.02, 0, 0, 1.5, 0.0); }) == "chi");
  CHECK(field_of([] { make_params(0.1, 0.02, 0, std::nan(""), 1.5); }) == "mu");
}

TEST_CASE("steady state agrees with direct root finding", "[opo-model]") {
  for (double sigma : {1.05, 1.5, 2.0, 4.0}) {
    for (double chi : {0.5, 1.0, 3.0}) {
      const auto p = make_params(0.10, 0.02, 0.004, 0.002, sigma, chi);
      const auto ss = steady_state(p);
      const Eigen::Vector3d x = mean_field_by_newton(p.gamma0(), p.gamma(), chi, sigma);
      CHECK_THAT(ss.pump_amp, WithinAbs(x(0), 1e-10));
      CHECK_THAT(ss.twin_amp, WithinAbs(x(1), 1e-10));
      CHECK_THAT(ss.twin_amp, WithinAbs(x(2), 1e-10));
      CHECK_THAT(ss.d, WithinAbs(std::sqrt(2.0) * chi * x(1), 1e-10));
    }
  }
}

TEST_CASE("steady state at sigma = 4 on the default mirrors", "[opo-model]") {
  const auto ss = steady_state(make_params(0.10, 0.02, 0, 0, 4.0, 1.0));
  CHECK_THAT(ss.d, WithinAbs(0.0316227766016838, 1e-12));
  CHECK_THAT(ss.pump_amp, WithinAbs(0.01, 1e-15));
}

TEST_CASE("pump clamping and chi scaling", "[opo-model]") {
  const auto a = steady_state(make_params(0.10, 0.02, 0, 0, 1.2, 1.0));
  const auto b = steady_state(make_params(0.10, 0.02, 0, 0, 3.0, 1.0));
  CHECK(a.pump_amp == b.pump_amp);
  CHECK(b.twin_amp > a.twin_amp);

  const auto c = steady_state(make_params(0.10, 0.02, 0, 0, 1.2, 2.0));
  CHECK_THAT(c.d, WithinRel(a.d, 1e-14));
  CHECK_THAT(c.twin_amp, WithinRel(a.twin_amp / 2, 1e-14));

  const auto near = steady_state(make_params(0.10, 0.02, 0, 0, 1.0 + kThresholdFloor, 1.0));
  CHECK(near.twin_amp < 3e-3);
  CHECK(near.d < 1e-3);
}

TEST_CASE("drift matrix has the sum/difference block structure", "[opo-model]") {
  const auto p = make_params(0.10, 0.02, 0.006, 0.004, 1.7, 1.3);
  const auto m = drift_model(p);
  const double g0 = p.gamma0(), g = p.gamma(), d = steady_state(p).d;

  // rows/cols: p0 q0 p+ q+ p- q-
  Mat6 expected = Mat6::Zero();
  expected(0, 0) = -g0;
  expected(0, 2) = -d;
  expected(1, 1) = -g0;
  expected(1, 3) = -d;
  expected(2, 0) = d;
  expected(3, 1) = d;
  expected(3, 3) = -2 * g;
  expected(4, 4) = -2 * g;
  CHECK((m.a - expected).cwiseAbs().maxCoeff() < 1e-15);

  Vec6 coupling, loss;
  coupling << std::sqrt(2 * p.gamma_c0()), std::sqrt(2 * p.gamma_c0()), std::sqrt(2 * p.gamma_c()),
      std::sqrt(2 * p.gamma_c()), std::sqrt(2 * p.gamma_c()), std::sqrt(2 * p.gamma_c());
  loss << std::sqrt(2 * p.gamma_l0()), std::sqrt(2 * p.gamma_l0()), std::sqrt(2 * p.gamma_l()),
      std::sqrt(2 * p.gamma_l()), std::sqrt(2 * p.gamma_l()), std::sqrt(2 * p.gamma_l());
  CHECK((m.b_c - Mat6(coupling.asDiagonal())).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((m.b_v - Mat6(loss.asDiagonal())).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(m.c_out == m.b_c);
}

TEST_CASE("uncoupled limit has the bare cavity eigenvalues", "[opo-model]") {
  const auto p = make_params(0.10, 0.02, 0, 0, 1.5);
  const auto m = scale_coupling(drift_model(p), 0.0);
  Eigen::VectorXd re = eigenvalues(m.a).real();
  std::sort(re.data(), re.data() + re.size());
  Eigen::VectorXd expected(6);
  expected << -0.05, -0.05, -0.02, -0.02, 0, 0;
  CHECK((re - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("amplitude block eigenvalues solve the characteristic polynomial", "[opo-model]") {
  const auto p = make_params(0.10, 0.02, 0, 0, 4.0);
  const auto m = drift_model(p);
  Eigen::Matrix2d block;
  block << m.a(0, 0), m.a(0, 2), m.a(2, 0), m.a(2, 2);
  const Eigen::Vector2cd lam = Eigen::EigenSolver<Eigen::Matrix2d>(block).eigenvalues();

  // lambda^2 + g0 lambda + d^2 = 0, d^2 = 1e-3
  const std::complex<double> disc = std::sqrt(std::complex<double>(0.0025 - 0.004, 0));
  const std::complex<double> r1 = (-0.05 + disc) / 2.0, r2 = (-0.05 - disc) / 2.0;
  for (int i = 0; i < 2; ++i) {
    CHECK_THAT(lam(i).real(), WithinAbs(-0.025, 1e-14));
    CHECK(std::min(std::abs(lam(i) - r1), std::abs(lam(i) - r2)) < 1e-14);
  }
}

TEST_CASE("exactly one undamped mode and all others stable", "[opo-model]") {
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const double sigma = 1.01 + 0.33 * i;
      const double t = 0.005 + 0.02 * j;
      const auto p = make_params(0.10, t, 0, 0, sigma);
      const auto lam = eigenvalues(drift_model(p).a);
      int zeros = 0;
      const double bound = -std::min(p.gamma0(), 2 * p.gamma()) * 1e-3;
      for (int k = 0; k < 6; ++k) {
        if (std::abs(lam(k)) < 1e-12) {
          ++zeros;
        } else {
          CHECK(lam(k).real() <= bound);
        }
      }
      CHECK(zeros == 1);
    }
  }
}

TEST_CASE("sum/difference rotation is orthogonal and an involution", "[opo-model]") {
  const Mat6& r = sum_difference_basis();
  CHECK(((r * r) - Mat6::Identity()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(((r * r.transpose()) - Mat6::Identity()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("unequal twin losses couple the difference channel", "[opo-model]") {
  auto p = make_params(0.10, 0.02, 0, 0.004, 1.5);
  p.idler_extra_loss = 0.004;
  const auto m = drift_model(p);
  CHECK(m.a.block(4, 0, 2, 4).cwiseAbs().maxCoeff() > 1e-4);

  // the asymmetric mean field is still stationary
  const auto ss = steady_state(p);
  CHECK_THAT(p.gamma() * ss.signal_amp * ss.signal_amp,
             WithinRel(p.gamma_idler() * ss.idler_amp * ss.idler_amp, 1e-13));
}
