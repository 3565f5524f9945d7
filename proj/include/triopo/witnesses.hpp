#pragma once

#include <array>
#include <optional>

#include "triopo/spectra.hpp"

namespace triopo {

using Coeffs3 = std::array<double, 3>;

/// Separability bound 2(|h_n g_n| + |h_k g_k + h_m g_m|) for the bipartition
/// lone | {k, m}: the sum of variances of u = sum h_j p_j and v = sum g_j q_j
/// cannot fall below it for states separable along that split.
double vf_bound(const Coeffs3& h, const Coeffs3& g, Mode lone);

/// Coefficients of one sum-of-variances witness. `free_index` marks the g
/// entry that is optimized, if any.
struct WitnessCombination {
  Coeffs3 h{};
  Coeffs3 g{};
  std::optional<int> free_index;

  Vec6 u() const;  // amplitude combination in the 6-quadrature ordering
  Vec6 v() const;  // phase combination
};

struct AlphaOptimum {
  double alpha = 0;
  double var_min = 0;
};

/// Minimizes V(fixed + alpha * direction) over alpha:
/// alpha* = -Cov(fixed, direction) / V(direction).
/// Throws DegenerateDirectionError when V(direction) <= 1e-12.
AlphaOptimum optimal_alpha(const SpectralMatrix& sm, const Vec6& fixed, const Vec6& direction);

enum class Criterion : int { s1 = 0, s2 = 1, s3 = 2 };

/// The three witnesses with their free coefficient set to `alpha`:
///   S1: V(p1 - p2) + V(q1 + q2 - alpha q0)
///   S2: V(p0 + p1) + V(q1 + alpha q2 - q0)
///   S3: V(p0 + p2) + V(alpha q1 + q2 - q0)
WitnessCombination combination(Criterion c, double alpha);

struct CriterionValue {
  double value = 0;              // optimized sum of variances
  double alpha = 0;              // optimal free coefficient
  std::array<double, 3> bounds{};  // vf_bound for lone = pump, signal, idler
  bool violated = false;         // value < 4
  // excluded[n]: value < bounds[n] with bounds[n] > 0, i.e. the split
  // n | rest is ruled out.
  std::array<bool, 3> excluded{};
};

struct WitnessResult {
  std::array<CriterionValue, 3> criteria;

  double s1() const { return criteria[0].value; }
  double s2() const { return criteria[1].value; }
  double s3() const { return criteria[2].value; }
  double alpha0() const { return criteria[0].alpha; }
  double alpha2() const { return criteria[1].alpha; }
  double alpha1() const { return criteria[2].alpha; }

  /// Every bipartition excluded by at least one criterion.
  bool tripartite() const;
};

WitnessResult evaluate_criteria(const SpectralMatrix& sm);

/// S1 with alpha forced to 0 (pump ignored), for comparison with the
/// optimized value.
double s1_unoptimized(const SpectralMatrix& sm);

}  // namespace triopo
