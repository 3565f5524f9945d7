#include "triopo/sweep.hpp"

#include <cmath>
#include <limits>

#include "triopo/errors.hpp"

namespace triopo {

std::vector<double> GridSpec::values() const {
  std::vector<double> v(static_cast<std::size_t>(std::max(steps, 0)));
  if (steps == 1) {
    v[0] = min;
    return v;
  }
  for (int i = 0; i < steps; ++i) {
    const double f = static_cast<double>(i) / (steps - 1);
    v[i] = log ? min * std::pow(max / min, f) : min + f * (max - min);
  }
  v.back() = max;
  return v;
}

std::string to_string(OutputKind k) {
  switch (k) {
    case OutputKind::witnesses: return "witnesses";
    case OutputKind::negativity: return "negativity";
    case OutputKind::spectra: return "spectra";
    case OutputKind::oracle: return "oracle";
  }
  return "?";
}

OutputKind output_kind_from_string(const std::string& s) {
  for (auto k : {OutputKind::witnesses, OutputKind::negativity, OutputKind::spectra, OutputKind::oracle})
    if (to_string(k) == s) return k;
  throw ConfigError("unknown output kind '" + s + "'");
}

namespace {

void validate_grid(const GridSpec& g, const char* name) {
  const std::string n = name;
  if (g.steps < 1) throw ConfigError(n + ": steps must be >= 1");
  if (!std::isfinite(g.min) || !std::isfinite(g.max)) throw ConfigError(n + ": bounds must be finite");
  if (g.steps > 1 && !(g.max > g.min)) throw ConfigError(n + ": grid must be strictly increasing");
  if (g.log && !(g.min > 0)) throw ConfigError(n + ": log spacing needs min > 0");
}

}  // namespace

void validate(const SweepConfig& cfg) {
  validate_grid(cfg.sigma_grid, "sigma_grid");
  validate_grid(cfg.omega_grid, "omega_grid");
  if (!(cfg.omega_grid.min > 0.0)) throw ConfigError("omega_grid: min must be > 0");
  if (cfg.sigma_grid.min < 1.0 + kThresholdFloor)
    throw ConfigError("sigma_grid: min must be >= 1 + " + std::to_string(kThresholdFloor));
  OpoParams p = cfg.params;
  p.sigma = cfg.sigma_grid.min;
  validate(p);
}

SweepRow evaluate_point(const OpoParams& params, double omega) {
  SweepRow row;
  row.sigma = params.sigma;
  row.omega = omega;
  try {
    const SpectralMatrix sm = output_spectrum(params, omega);
    const WitnessResult w = evaluate_criteria(sm);
    const NegativityResult n = en_diff(sm);
    row.s1_min = w.s1();
    row.alpha0 = w.alpha0();
    row.s2_min = w.s2();
    row.alpha2 = w.alpha2();
    row.s3_min = w.s3();
    row.alpha1 = w.alpha1();
    row.lambda1 = n.eigvals_full(0);
    row.lambda2 = n.eigvals_full(1);
    row.en_full = n.en_full;
    row.en_reduced = n.en_reduced;
    row.en_diff = n.en_diff;
    row.covariance = sm.re();
  } catch (const Error& e) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    row.s1_min = row.alpha0 = row.s2_min = row.alpha2 = row.s3_min = row.alpha1 = nan;
    row.lambda1 = row.lambda2 = row.en_full = row.en_reduced = row.en_diff = nan;
    row.covariance.setConstant(nan);
    row.error = e.what();
  }
  return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg, Execution exec) {
  validate(cfg);
  const std::vector<double> sigmas = cfg.sigma_grid.values();
  const std::vector<double> omegas = cfg.omega_grid.values();
  const std::int64_t n_omega = static_cast<std::int64_t>(omegas.size());
  const std::int64_t total = static_cast<std::int64_t>(sigmas.size()) * n_omega;

  std::vector<SweepRow> rows(static_cast<std::size_t>(total));
  auto eval = [&](std::int64_t idx) {
    OpoParams p = cfg.params;
    p.sigma = sigmas[idx / n_omega];
    rows[idx] = evaluate_point(p, omegas[idx % n_omega]);
  };

  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (std::int64_t idx = 0; idx < total; ++idx) eval(idx);
  } else {
    for (std::int64_t idx = 0; idx < total; ++idx) eval(idx);
  }
  return rows;
}

PointReport run_point(const OpoParams& params, double omega) {
  PointReport r;
  r.params = params;
  r.spectrum = output_spectrum(params, omega);
  r.witnesses = evaluate_criteria(r.spectrum);
  r.negativity = en_diff(r.spectrum);
  for (int n = 0; n < 3; ++n) r.ppt_negativity[n] = ppt_symplectic_check(r.spectrum, static_cast<Mode>(n));
  return r;
}

std::string to_string(OracleCombination c) {
  switch (c) {
    case OracleCombination::p1_minus_p2: return "p1-p2";
    case OracleCombination::q1_plus_q2: return "q1+q2";
    case OracleCombination::p0: return "p0";
    case OracleCombination::q1_plus_q2_minus_alpha0_q0: return "q1+q2-alpha0*q0";
  }
  return "?";
}

Vec6 combination_vector(OracleCombination c, const SpectralMatrix& sm) {
  using namespace quad;
  switch (c) {
    case OracleCombination::p1_minus_p2: return unit(p1) - unit(p2);
    case OracleCombination::q1_plus_q2: return unit(q1) + unit(q2);
    case OracleCombination::p0: return unit(p0);
    case OracleCombination::q1_plus_q2_minus_alpha0_q0: {
      const double alpha0 = evaluate_criteria(sm).alpha0();
      return unit(q1) + unit(q2) - alpha0 * unit(q0);
    }
  }
  throw DomainError("unknown oracle combination");
}

double OracleReport::fraction_outside(double z_limit) const {
  if (rows.empty()) return 0.0;
  std::size_t outside = 0;
  for (const auto& r : rows)
    if (!(std::abs(r.z) <= z_limit)) ++outside;
  return static_cast<double>(outside) / static_cast<double>(rows.size());
}

bool OracleReport::mismatch() const { return fraction_outside() > kOracleMaxOutsideFraction; }

OracleReport run_oracle_check(const OpoParams& params, const SimConfig& cfg,
                              std::span<const double> omegas,
                              std::span<const OracleCombination> combos, Execution exec) {
  validate(cfg, params);
  std::vector<SpectrumProbe> probes;
  std::vector<OracleRow> rows;
  for (const auto combo : combos) {
    for (const double w : omegas) {
      const SpectralMatrix sm = output_spectrum(params, warped_frequency(w, cfg.dt));
      const Vec6 c = combination_vector(combo, sm);
      probes.push_back({c, w});
      OracleRow row;
      row.combination = to_string(combo);
      row.omega = w;
      row.analytic = variance(sm, c);
      rows.push_back(row);
    }
  }

  const auto estimates = estimate_probes(params, cfg, probes, exec);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    rows[k].estimate = estimates[k].estimate;
    rows[k].std_error = estimates[k].std_error;
    rows[k].z = (estimates[k].estimate - rows[k].analytic) / estimates[k].std_error;
  }
  return OracleReport{std::move(rows)};
}

}  // namespace triopo
