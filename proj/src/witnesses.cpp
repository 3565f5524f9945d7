#include "triopo/witnesses.hpp"

#include <cmath>

#include "triopo/errors.hpp"

namespace triopo {

namespace {

constexpr double kSeparableBound = 4.0;
constexpr double kDegenerateVariance = 1e-12;

Vec6 spread(const Coeffs3& c, int offset) {
  Vec6 v = Vec6::Zero();
  for (int j = 0; j < 3; ++j) v(2 * j + offset) = c[j];
  return v;
}

// (fixed, direction) decomposition of the phase combination of each witness.
struct PhasePattern {
  Vec6 fixed;
  Vec6 direction;
};

PhasePattern phase_pattern(Criterion c) {
  using namespace quad;
  switch (c) {
    case Criterion::s1:
      return {unit(q1) + unit(q2), -unit(q0)};
    case Criterion::s2:
      return {unit(q1) - unit(q0), unit(q2)};
    case Criterion::s3:
      return {unit(q2) - unit(q0), unit(q1)};
  }
  throw DomainError("unknown criterion");
}

}  // namespace

double vf_bound(const Coeffs3& h, const Coeffs3& g, Mode lone) {
  const int n = static_cast<int>(lone);
  const int k = (n + 1) % 3;
  const int m = (n + 2) % 3;
  return 2.0 * (std::abs(h[n] * g[n]) + std::abs(h[k] * g[k] + h[m] * g[m]));
}

Vec6 WitnessCombination::u() const { return spread(h, 0); }
Vec6 WitnessCombination::v() const { return spread(g, 1); }

AlphaOptimum optimal_alpha(const SpectralMatrix& sm, const Vec6& fixed, const Vec6& direction) {
  const Mat6 cov = sm.re();
  const double vd = direction.dot(cov * direction);
  if (!(vd > kDegenerateVariance))
    throw DegenerateDirectionError("direction variance " + std::to_string(vd) + " is degenerate");
  const double vf = fixed.dot(cov * fixed);
  const double c = fixed.dot(cov * direction);
  return {-c / vd, vf - c * c / vd};
}

WitnessCombination combination(Criterion c, double alpha) {
  WitnessCombination w;
  switch (c) {
    case Criterion::s1:
      w.h = {0, 1, -1};
      w.g = {-alpha, 1, 1};
      w.free_index = 0;
      break;
    case Criterion::s2:
      w.h = {1, 1, 0};
      w.g = {-1, 1, alpha};
      w.free_index = 2;
      break;
    case Criterion::s3:
      w.h = {1, 0, 1};
      w.g = {-1, alpha, 1};
      w.free_index = 1;
      break;
  }
  return w;
}

bool WitnessResult::tripartite() const {
  for (int n = 0; n < 3; ++n) {
    bool any = false;
    for (const auto& c : criteria) any = any || c.excluded[n];
    if (!any) return false;
  }
  return true;
}

WitnessResult evaluate_criteria(const SpectralMatrix& sm) {
  WitnessResult result;
  for (int i = 0; i < 3; ++i) {
    const auto crit = static_cast<Criterion>(i);
    const PhasePattern pattern = phase_pattern(crit);
    const AlphaOptimum opt = optimal_alpha(sm, pattern.fixed, pattern.direction);
    const WitnessCombination w = combination(crit, opt.alpha);

    if (crit == Criterion::s1) {
      // u and v commute for S1 whatever alpha is.
      double hg = 0;
      for (int j = 0; j < 3; ++j) hg += w.h[j] * w.g[j];
      if (std::abs(hg) > 1e-12) throw NumericError("S1 combination does not commute");
    }

    CriterionValue& out = result.criteria[i];
    out.alpha = opt.alpha;
    out.value = variance(sm, w.u()) + opt.var_min;
    out.violated = out.value < kSeparableBound;
    for (int n = 0; n < 3; ++n) {
      out.bounds[n] = vf_bound(w.h, w.g, static_cast<Mode>(n));
      out.excluded[n] = out.bounds[n] > 0 && out.value < out.bounds[n];
    }
  }
  return result;
}

double s1_unoptimized(const SpectralMatrix& sm) {
  const WitnessCombination w = combination(Criterion::s1, 0.0);
  return variance(sm, w.u()) + variance(sm, w.v());
}

}  // namespace triopo
