// triopo: pump/signal/idler entanglement of an above-threshold OPO.
//
//   triopo sweep  [--config cfg.json] [grid/param flags] [--out file] [--format csv|json]
//   triopo point  [--sigma S] [--omega W] [param flags] [--out file]
//   triopo oracle [--sigma S] [--seed N] [--omegas W ...] [sim flags] [--out file]
//
// Exit codes: 0 success, 2 config error, 3 numeric failure, 4 oracle mismatch.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "triopo/errors.hpp"
#include "triopo/report.hpp"
#include "triopo/sweep.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitOracle = 4;

struct ParamFlags {
  std::optional<double> t0, t, mu0, mu, chi;

  void add(CLI::App* app) {
    app->add_option("--t0", t0, "pump coupling transmittance");
    app->add_option("--t", t, "signal/idler coupling transmittance");
    app->add_option("--mu0", mu0, "pump spurious loss");
    app->add_option("--mu", mu, "signal/idler spurious loss");
    app->add_option("--chi", chi, "nonlinear coupling");
  }

  void apply(triopo::OpoParams& p) const {
    if (t0) p.t0 = *t0;
    if (t) p.t = *t;
    if (mu0) p.mu0 = *mu0;
    if (mu) p.mu = *mu;
    if (chi) p.chi = *chi;
  }
};

// Writes `text` to `path`, or stdout for "-".
void emit(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw triopo::ConfigError("cannot open output file '" + path + "'");
  os << text;
}

std::string sibling_path(const std::string& path, const std::string& suffix) {
  if (path == "-") return "-";
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}

std::string oracle_text(const triopo::OracleReport& report, const std::string& format) {
  std::ostringstream os;
  if (format == "json")
    os << triopo::to_json(report).dump(2) << '\n';
  else
    triopo::write_oracle_csv(os, report);
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tripartite entanglement of the above-threshold OPO"};
  app.require_subcommand(1);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "evaluate witnesses and negativities over a (sigma, omega) grid");
  std::string config_path;
  ParamFlags sweep_params;
  std::optional<double> sigma_min, sigma_max, omega_min, omega_max;
  std::optional<int> sigma_steps, omega_steps;
  bool log_omega = false;
  bool serial = false;
  std::vector<std::string> outputs;
  std::string sweep_out = "-";
  std::string sweep_format = "csv";
  std::uint64_t sweep_seed = 42;
  sweep->add_option("--config", config_path, "JSON sweep configuration")->check(CLI::ExistingFile);
  sweep_params.add(sweep);
  sweep->add_option("--sigma-min", sigma_min);
  sweep->add_option("--sigma-max", sigma_max);
  sweep->add_option("--sigma-steps", sigma_steps);
  sweep->add_option("--omega-min", omega_min);
  sweep->add_option("--omega-max", omega_max);
  sweep->add_option("--omega-steps", omega_steps);
  sweep->add_flag("--log-omega", log_omega, "geometric omega spacing");
  sweep->add_option("--outputs", outputs, "witnesses, negativity, spectra, oracle");
  sweep->add_option("--out", sweep_out, "output file, '-' for stdout");
  sweep->add_option("--format", sweep_format)->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--seed", sweep_seed, "seed for the oracle output");
  sweep->add_flag("--serial", serial, "use the serial reference kernels");

  // point
  auto* point = app.add_subcommand("point", "full report at one (sigma, omega)");
  ParamFlags point_params;
  double point_sigma = 1.5;
  double point_omega = 0.05;
  std::string point_out = "-";
  point_params.add(point);
  point->add_option("--sigma", point_sigma);
  point->add_option("--omega", point_omega);
  point->add_option("--out", point_out);

  // oracle
  auto* oracle = app.add_subcommand("oracle", "compare analytic spectra with a Monte Carlo integration");
  ParamFlags oracle_params;
  double oracle_sigma = 1.5;
  std::vector<double> oracle_omegas{0.01, 0.02, 0.05, 0.1};
  triopo::SimConfig sim;
  std::string oracle_out = "-";
  std::string oracle_format = "csv";
  oracle_params.add(oracle);
  oracle->add_option("--sigma", oracle_sigma);
  oracle->add_option("--omegas", oracle_omegas);
  oracle->add_option("--seed", sim.seed);
  oracle->add_option("--dt", sim.dt);
  oracle->add_option("--n-steps", sim.n_steps);
  oracle->add_option("--burn-in", sim.burn_in);
  oracle->add_option("--segments", sim.n_segments);
  oracle->add_option("--chains", sim.n_chains);
  oracle->add_option("--coupling-scale", sim.coupling_scale, "distort the simulated coupling (negative control)");
  oracle->add_option("--out", oracle_out);
  oracle->add_option("--format", oracle_format)->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sweep) {
      triopo::SweepConfig cfg;
      if (!config_path.empty()) {
        std::ifstream is(config_path);
        nlohmann::json j;
        try {
          is >> j;
        } catch (const nlohmann::json::exception& e) {
          throw triopo::ConfigError(std::string("cannot parse config: ") + e.what());
        }
        cfg = triopo::sweep_config_from_json(j);
      }
      sweep_params.apply(cfg.params);
      if (sigma_min) cfg.sigma_grid.min = *sigma_min;
      if (sigma_max) cfg.sigma_grid.max = *sigma_max;
      if (sigma_steps) cfg.sigma_grid.steps = *sigma_steps;
      if (omega_min) cfg.omega_grid.min = *omega_min;
      if (omega_max) cfg.omega_grid.max = *omega_max;
      if (omega_steps) cfg.omega_grid.steps = *omega_steps;
      if (log_omega) cfg.omega_grid.log = true;
      if (!outputs.empty()) {
        cfg.outputs.clear();
        for (const auto& o : outputs) cfg.outputs.insert(triopo::output_kind_from_string(o));
      }

      const auto exec = serial ? triopo::Execution::serial : triopo::Execution::parallel;
      const auto rows = triopo::run_sweep(cfg, exec);
      const bool with_spectra = cfg.outputs.count(triopo::OutputKind::spectra) > 0;
      std::ostringstream os;
      if (sweep_format == "json")
        os << triopo::sweep_to_json(rows, with_spectra).dump(2) << '\n';
      else
        triopo::write_sweep_csv(os, rows, with_spectra);
      emit(sweep_out, os.str());

      int status = 0;
      std::size_t failed = 0;
      for (const auto& r : rows) failed += r.ok() ? 0 : 1;
      if (failed > 0) {
        std::cerr << failed << " grid point(s) failed; see the status column\n";
        status = kExitNumeric;
      }

      if (cfg.outputs.count(triopo::OutputKind::oracle)) {
        // One oracle table per sigma at the standard check frequencies.
        triopo::SimConfig sc;
        sc.seed = sweep_seed;
        const std::vector<double> check_omegas{0.01, 0.02, 0.05, 0.1};
        triopo::OracleReport all;
        for (double s : cfg.sigma_grid.values()) {
          triopo::OpoParams p = cfg.params;
          p.sigma = s;
          auto rep = triopo::run_oracle_check(p, sc, check_omegas, triopo::kAllOracleCombinations, exec);
          for (auto& row : rep.rows) row.combination = "sigma=" + triopo::format_number(s) + ":" + row.combination;
          all.rows.insert(all.rows.end(), rep.rows.begin(), rep.rows.end());
        }
        emit(sibling_path(sweep_out, "_oracle"), oracle_text(all, sweep_format));
        if (all.mismatch() && status == 0) status = kExitOracle;
      }
      return status;
    }

    if (*point) {
      triopo::OpoParams p;
      point_params.apply(p);
      p.sigma = point_sigma;
      triopo::validate(p);
      const auto report = triopo::run_point(p, point_omega);
      emit(point_out, triopo::to_json(report).dump(2) + "\n");
      return 0;
    }

    if (*oracle) {
      triopo::OpoParams p;
      oracle_params.apply(p);
      p.sigma = oracle_sigma;
      const auto report = triopo::run_oracle_check(p, sim, oracle_omegas);
      emit(oracle_out, oracle_text(report, oracle_format));
      if (report.mismatch()) {
        std::cerr << "oracle mismatch: " << report.fraction_outside() * 100.0
                  << "% of z-scores exceed " << triopo::kOracleZLimit << "\n";
        return kExitOracle;
      }
      return 0;
    }
  } catch (const triopo::NumericError& e) {
    std::cerr << e.what() << '\n';
    return kExitNumeric;
  } catch (const triopo::DegenerateDirectionError& e) {
    std::cerr << e.what() << '\n';
    return kExitNumeric;
  } catch (const triopo::InsufficientDataError& e) {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  } catch (const triopo::Error& e) {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
