#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "triopo/execution.hpp"
#include "triopo/negativity.hpp"
#include "triopo/sde_oracle.hpp"
#include "triopo/witnesses.hpp"

namespace triopo {

struct GridSpec {
  double min = 0;
  double max = 0;
  int steps = 1;
  bool log = false;

  /// `steps` points from min to max inclusive, linear or geometric.
  std::vector<double> values() const;
};

enum class OutputKind { witnesses, negativity, spectra, oracle };

std::string to_string(OutputKind k);
OutputKind output_kind_from_string(const std::string& s);

struct SweepConfig {
  OpoParams params;  // sigma is taken from sigma_grid
  GridSpec sigma_grid{1.05, 2.0, 40, false};
  GridSpec omega_grid{0.005, 0.5, 100, false};
  std::set<OutputKind> outputs{OutputKind::witnesses, OutputKind::negativity};
};

/// Throws ConfigError for non-increasing grids, omega_min <= 0 or
/// sigma_min < 1 + kThresholdFloor; RangeError for bad parameters.
void validate(const SweepConfig& cfg);

struct SweepRow {
  double sigma = 0;
  double omega = 0;
  double s1_min = 0, alpha0 = 0;
  double s2_min = 0, alpha2 = 0;
  double s3_min = 0, alpha1 = 0;
  double lambda1 = 0, lambda2 = 0;
  double en_full = 0, en_reduced = 0, en_diff = 0;
  Mat6 covariance = Mat6::Zero();  // re(s)
  std::string error;               // empty when the point succeeded

  bool ok() const { return error.empty(); }
};

/// Evaluates one grid point; numeric failures become a row error.
SweepRow evaluate_point(const OpoParams& params, double omega);

/// Rows ordered by (sigma, omega), one per grid point. Grid points are
/// independent and evaluated concurrently under Execution::parallel; the
/// serial path is the reference and gives identical rows.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg, Execution exec = Execution::parallel);

struct PointReport {
  OpoParams params;
  SpectralMatrix spectrum;
  WitnessResult witnesses;
  NegativityResult negativity;
  std::array<double, 3> ppt_negativity{};  // lone = pump, signal, idler
};

PointReport run_point(const OpoParams& params, double omega);

/// Output combinations compared by the oracle check.
enum class OracleCombination { p1_minus_p2, q1_plus_q2, p0, q1_plus_q2_minus_alpha0_q0 };

std::string to_string(OracleCombination c);

/// The combination vector at one frequency (alpha0 is optimized on `sm`).
Vec6 combination_vector(OracleCombination c, const SpectralMatrix& sm);

inline constexpr OracleCombination kAllOracleCombinations[] = {
    OracleCombination::p1_minus_p2, OracleCombination::q1_plus_q2, OracleCombination::p0,
    OracleCombination::q1_plus_q2_minus_alpha0_q0};

inline constexpr double kOracleZLimit = 3.0;
inline constexpr double kOracleMaxOutsideFraction = 0.05;

struct OracleRow {
  std::string combination;
  double omega = 0;
  double analytic = 0;
  double estimate = 0;
  double std_error = 0;
  double z = 0;
};

struct OracleReport {
  std::vector<OracleRow> rows;

  double fraction_outside(double z_limit = kOracleZLimit) const;
  /// More than 5% of |z| exceed 3.
  bool mismatch() const;
};

/// Monte Carlo spectra of the time-domain model against output_spectrum.
/// The analytic side is evaluated at the warped frequency of the sampled
/// simulation and always uses the undistorted model, so cfg.coupling_scale
/// != 1 acts as a negative control.
OracleReport run_oracle_check(const OpoParams& params, const SimConfig& cfg,
                              std::span<const double> omegas,
                              std::span<const OracleCombination> combos = kAllOracleCombinations,
                              Execution exec = Execution::parallel);

}  // namespace triopo
