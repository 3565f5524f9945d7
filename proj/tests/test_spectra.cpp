#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "triopo/errors.hpp"
#include "triopo/spectra.hpp"

using namespace triopo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

struct RandomPoint {
  OpoParams params;
  double omega;
};

// Random valid operating points, optionally lossless.
RandomPoint random_point(std::mt19937_64& rng, bool lossy) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double t0 = 0.01 + 0.29 * u(rng);
  const double t = 0.005 + 0.095 * u(rng);
  const double mu0 = lossy ? 0.02 * u(rng) : 0.0;
  const double mu = lossy ? 0.001 + 0.02 * u(rng) : 0.0;
  const double sigma = 1.01 + 4.0 * u(rng);
  const double omega = std::pow(10.0, -3.0 + 3.0 * u(rng));
  return {make_params(t0, t, mu0, mu, sigma), omega};
}

const Vec6 kDiffP = (unit(quad::p1) - unit(quad::p2)) / std::sqrt(2.0);
const Vec6 kDiffQ = (unit(quad::q1) - unit(quad::q2)) / std::sqrt(2.0);

Mat6 swap_twins(const Mat6& m) {
  Eigen::PermutationMatrix<6> perm;
  perm.indices() << 0, 1, 4, 5, 2, 3;
  return perm * m * perm.transpose();
}

}  // namespace

TEST_CASE("far outside the cavity bandwidth the output is shot noise", "[spectra]") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10; ++i) {
    const auto pt = random_point(rng, i % 2 == 1);
    const auto sm = output_spectrum(pt.params, 100.0);
    CHECK((sm.re() - Mat6::Identity()).cwiseAbs().maxCoeff() <= 1e-3);
  }
}

TEST_CASE("twin difference channel follows the single-cavity closed form", "[spectra]") {
  // p-: dx = -2g x + sqrt(2g) xi  =>  |i w / (2g - i w)|^2
  // q-: dx = sqrt(2g) xi          =>  |2g / (-i w) - 1|^2
  const auto p = make_params(0.10, 0.02, 0, 0, 1.5);
  const double g = p.gamma();
  for (double w : {0.001, 0.005, 0.01, 0.02, 0.05, 0.2, 1.0}) {
    const auto sm = output_spectrum(p, w);
    CHECK_THAT(variance(sm, kDiffP), WithinRel(w * w / (w * w + 4 * g * g), 1e-12));
    CHECK_THAT(variance(sm, kDiffQ), WithinRel(1 + 4 * g * g / (w * w), 1e-12));
  }
  const auto at_bandwidth = output_spectrum(p, 0.02);
  CHECK_THAT(variance(at_bandwidth, kDiffP), WithinAbs(0.5, 1e-12));
  CHECK_THAT(variance(at_bandwidth, unit(quad::p1) - unit(quad::p2)), WithinAbs(1.0, 1e-12));
}

TEST_CASE("lossy twin difference channel", "[spectra]") {
  // |2gc/(2g - iw) - 1|^2 + |2 sqrt(gc gl)/(2g - iw)|^2 = (4 gl g + w^2) / (4 g^2 + w^2)
  const auto p = make_params(0.10, 0.02, 0.01, 0.006, 1.8);
  const double g = p.gamma(), gl = p.gamma_l();
  for (double w : {0.002, 0.02, 0.3}) {
    const auto sm = output_spectrum(p, w);
    CHECK_THAT(variance(sm, kDiffP), WithinRel((4 * gl * g + w * w) / (4 * g * g + w * w), 1e-12));
  }
}

TEST_CASE("variance of simple combinations", "[spectra]") {
  SpectralMatrix vac;
  vac.omega = 1.0;
  CHECK(variance(vac, unit(quad::p1) - unit(quad::p2)) == 2.0);

  const auto sm = output_spectrum(make_params(0.10, 0.02, 0, 0, 1.5), 0.07);
  for (int j = 0; j < 6; ++j) CHECK(variance(sm, unit(j)) == sm.re()(j, j));
}

TEST_CASE("non-positive analysis frequencies are rejected", "[spectra]") {
  const auto p = make_params(0.10, 0.02, 0, 0, 1.5);
  CHECK_THROWS_AS(output_spectrum(p, 0.0), SingularFrequencyError);
  CHECK_THROWS_AS(output_spectrum(p, -0.1), SingularFrequencyError);
  CHECK_THROWS_AS(output_spectrum(p, std::nan("")), SingularFrequencyError);
}

TEST_CASE("spectral matrix invariants on random operating points", "[spectra][property]") {
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 200; ++i) {
    const auto pt = random_point(rng, i % 2 == 0);
    const auto sm = output_spectrum(pt.params, pt.omega);
    INFO("sigma=" << pt.params.sigma << " omega=" << pt.omega);

    CHECK((sm.s - sm.s.adjoint()).cwiseAbs().maxCoeff() <= 1e-10);
    for (int j = 0; j < 6; ++j) {
      CHECK(std::abs(sm.s(j, j).imag()) <= 1e-10);
      CHECK(sm.s(j, j).real() >= 0);
    }
    const Eigen::SelfAdjointEigenSolver<Mat6> es(sm.re());
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    for (int mode = 0; mode < 3; ++mode)
      CHECK(sm.re()(2 * mode, 2 * mode) * sm.re()(2 * mode + 1, 2 * mode + 1) >= 1 - 1e-9);
    CHECK((swap_twins(sm.re()) - sm.re()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("lossless twin difference channel is minimum uncertainty", "[spectra][property]") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) {
    const auto pt = random_point(rng, false);
    const auto sm = output_spectrum(pt.params, pt.omega);
    CHECK_THAT(variance(sm, kDiffP) * variance(sm, kDiffQ), WithinAbs(1.0, 1e-9));
  }
  for (int i = 0; i < 100; ++i) {
    const auto pt = random_point(rng, true);
    const auto sm = output_spectrum(pt.params, pt.omega);
    CHECK(variance(sm, kDiffP) * variance(sm, kDiffQ) > 1.0);
  }
}

TEST_CASE("chi cancels from the spectra", "[spectra][property]") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    auto pt = random_point(rng, true);
    const auto a = output_spectrum(pt.params, pt.omega);
    pt.params.chi *= 2;
    const auto b = output_spectrum(pt.params, pt.omega);
    CHECK((a.s - b.s).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("twin loss degrades intensity-difference squeezing inside the bandwidth", "[spectra]") {
  // Inside the twin bandwidth 2 gamma the p1 - p2 noise grows with loss.
  for (double w : {0.002, 0.005, 0.01, 0.015}) {
    double previous = -1;
    for (int k = 0; k <= 10; ++k) {
      const auto sm = output_spectrum(make_params(0.10, 0.02, 0, 0.001 * k, 1.5), w);
      const double v = variance(sm, unit(quad::p1) - unit(quad::p2));
      CHECK(v > previous);
      previous = v;
    }
  }
}

TEST_CASE("above the bandwidth twin loss broadens the squeezing band", "[spectra]") {
  // At fixed omega > 2 gamma the extra decay rate widens the squeezing
  // spectrum faster than the loss adds noise.
  const double w = 0.05;
  const auto clean = output_spectrum(make_params(0.10, 0.02, 0, 0, 1.5), w);
  const auto lossy = output_spectrum(make_params(0.10, 0.02, 0, 0.01, 1.5), w);
  const Vec6 c = unit(quad::p1) - unit(quad::p2);
  CHECK(variance(lossy, c) < variance(clean, c));
}

TEST_CASE("spectra vary continuously with frequency", "[spectra][property]") {
  // Largest slope on this grid comes from the 1/omega^2 phase diffusion at
  // omega_min; measured 3.2e3 and frozen with margin.
  constexpr double kSlope = 4.0e3;
  const double delta = 1e-5;
  for (double sigma : {1.05, 1.5, 2.0}) {
    const auto p = make_params(0.10, 0.02, 0, 0, sigma);
    for (int i = 0; i < 200; ++i) {
      const double w = 0.005 + i * (0.5 - 0.005) / 199;
      const auto a = output_spectrum(p, w);
      const auto b = output_spectrum(p, w + delta);
      CHECK((a.s - b.s).cwiseAbs().maxCoeff() <= kSlope * delta);
    }
  }
}

TEST_CASE("unequal twin losses break the exchange symmetry", "[spectra]") {
  auto p = make_params(0.10, 0.02, 0, 0.002, 1.5);
  p.idler_extra_loss = 0.006;
  const auto sm = output_spectrum(p, 0.03);
  CHECK((swap_twins(sm.re()) - sm.re()).cwiseAbs().maxCoeff() > 1e-4);
  const Eigen::SelfAdjointEigenSolver<Mat6> es(sm.re());
  CHECK(es.eigenvalues().minCoeff() > 0);
}
