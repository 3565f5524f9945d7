#include "triopo/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "triopo/errors.hpp"

namespace triopo {

namespace {

constexpr const char* kQuadNames[6] = {"p0", "q0", "p1", "q1", "p2", "q2"};

std::vector<double> core_values(const SweepRow& r) {
  return {r.sigma,   r.omega,  r.s1_min,  r.alpha0,     r.s2_min,
          r.alpha2,  r.s3_min, r.alpha1,  r.lambda1,    r.lambda2,
          r.en_full, r.en_reduced, r.en_diff};
}

std::vector<double> spectra_values(const SweepRow& r) {
  std::vector<double> v;
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j) v.push_back(r.covariance(i, j));
  return v;
}

nlohmann::json matrix_json(const Mat6& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 6; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < 6; ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

// JSON has no NaN; failed points carry null.
nlohmann::json number_json(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

GridSpec grid_from_json(const nlohmann::json& j, GridSpec g) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "min") g.min = it->get<double>();
    else if (it.key() == "max") g.max = it->get<double>();
    else if (it.key() == "steps") g.steps = it->get<int>();
    else if (it.key() == "log") g.log = it->get<bool>();
    else throw ConfigError("unknown grid field '" + it.key() + "'");
  }
  return g;
}

nlohmann::json grid_json(const GridSpec& g) {
  return {{"min", g.min}, {"max", g.max}, {"steps", g.steps}, {"log", g.log}};
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::string> sweep_columns(bool with_spectra) {
  std::vector<std::string> cols{"sigma",   "omega",  "s1_min",  "alpha0",  "s2_min",
                                "alpha2",  "s3_min", "alpha1",  "lambda1", "lambda2",
                                "en_full", "en_reduced", "en_diff"};
  if (with_spectra)
    for (int i = 0; i < 6; ++i)
      for (int j = i; j < 6; ++j) cols.push_back(std::string("cov_") + kQuadNames[i] + "_" + kQuadNames[j]);
  cols.push_back("status");
  return cols;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows, bool with_spectra) {
  const auto cols = sweep_columns(with_spectra);
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const auto& r : rows) {
    std::vector<double> values = core_values(r);
    if (with_spectra) {
      const auto extra = spectra_values(r);
      values.insert(values.end(), extra.begin(), extra.end());
    }
    for (double v : values) os << format_number(v) << ',';
    if (r.ok()) {
      os << "ok";
    } else {
      std::string msg = r.error;
      for (char& c : msg)
        if (c == '"') c = '\'';
      os << '"' << msg << '"';
    }
    os << '\n';
  }
}

nlohmann::json sweep_to_json(const std::vector<SweepRow>& rows, bool with_spectra) {
  const auto cols = sweep_columns(with_spectra);
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    std::vector<double> values = core_values(r);
    if (with_spectra) {
      const auto extra = spectra_values(r);
      values.insert(values.end(), extra.begin(), extra.end());
    }
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < values.size(); ++i) obj[cols[i]] = number_json(values[i]);
    obj["status"] = r.ok() ? std::string("ok") : r.error;
    out.push_back(std::move(obj));
  }
  return out;
}

nlohmann::json to_json(const OpoParams& p) {
  return {{"t0", p.t0},   {"t", p.t},     {"mu0", p.mu0}, {"mu", p.mu},
          {"sigma", p.sigma}, {"chi", p.chi}, {"tau", p.tau}};
}

nlohmann::json to_json(const PointReport& r) {
  nlohmann::json j;
  j["params"] = to_json(r.params);
  j["omega"] = r.spectrum.omega;
  j["quadratures"] = {"p0", "q0", "p1", "q1", "p2", "q2"};
  j["spectral_matrix"] = {{"re", matrix_json(r.spectrum.s.real())},
                          {"im", matrix_json(r.spectrum.s.imag())}};

  nlohmann::json crit = nlohmann::json::array();
  const char* names[3] = {"s1", "s2", "s3"};
  const char* alphas[3] = {"alpha0", "alpha2", "alpha1"};
  for (int i = 0; i < 3; ++i) {
    const auto& c = r.witnesses.criteria[i];
    crit.push_back({{"name", names[i]},
                    {"value", c.value},
                    {"alpha_name", alphas[i]},
                    {"alpha", c.alpha},
                    {"bounds", c.bounds},
                    {"violated", c.violated},
                    {"excluded", c.excluded}});
  }
  j["witnesses"] = {{"criteria", crit}, {"tripartite", r.witnesses.tripartite()}};

  const auto& n = r.negativity;
  j["negativity"] = {
      {"eigvals_full", std::vector<double>(n.eigvals_full.data(), n.eigvals_full.data() + 6)},
      {"eigvals_reduced", std::vector<double>(n.eigvals_reduced.data(), n.eigvals_reduced.data() + 4)},
      {"en_full", n.en_full},
      {"en_reduced", n.en_reduced},
      {"en_diff", n.en_diff},
      {"beta", n.beta ? nlohmann::json(*n.beta) : nlohmann::json(nullptr)}};
  j["ppt_negativity"] = {{"pump", r.ppt_negativity[0]},
                         {"signal", r.ppt_negativity[1]},
                         {"idler", r.ppt_negativity[2]}};
  return j;
}

nlohmann::json to_json(const OracleReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"combination", row.combination},
                    {"omega", row.omega},
                    {"analytic", row.analytic},
                    {"estimate", row.estimate},
                    {"std_error", row.std_error},
                    {"z", row.z}});
  return {{"rows", rows}, {"fraction_outside", r.fraction_outside()}, {"mismatch", r.mismatch()}};
}

void write_oracle_csv(std::ostream& os, const OracleReport& r) {
  os << "combination,omega,analytic,estimate,std_error,z\n";
  for (const auto& row : r.rows)
    os << row.combination << ',' << format_number(row.omega) << ',' << format_number(row.analytic)
       << ',' << format_number(row.estimate) << ',' << format_number(row.std_error) << ','
       << format_number(row.z) << '\n';
}

SweepConfig sweep_config_from_json(const nlohmann::json& j) {
  SweepConfig cfg;
  try {
    if (!j.is_object()) throw ConfigError("sweep config must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& key = it.key();
      if (key == "params") {
        for (auto p = it->begin(); p != it->end(); ++p) {
          const double v = p->get<double>();
          if (p.key() == "t0") cfg.params.t0 = v;
          else if (p.key() == "t") cfg.params.t = v;
          else if (p.key() == "mu0") cfg.params.mu0 = v;
          else if (p.key() == "mu") cfg.params.mu = v;
          else if (p.key() == "chi") cfg.params.chi = v;
          else if (p.key() == "tau") cfg.params.tau = v;
          else if (p.key() == "sigma") cfg.params.sigma = v;
          else throw ConfigError("unknown params field '" + p.key() + "'");
        }
      } else if (key == "sigma_grid") {
        cfg.sigma_grid = grid_from_json(*it, cfg.sigma_grid);
      } else if (key == "omega_grid") {
        cfg.omega_grid = grid_from_json(*it, cfg.omega_grid);
      } else if (key == "outputs") {
        cfg.outputs.clear();
        for (const auto& o : *it) cfg.outputs.insert(output_kind_from_string(o.get<std::string>()));
      } else {
        throw ConfigError("unknown sweep config field '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed sweep config: ") + e.what());
  }
  return cfg;
}

nlohmann::json to_json(const SweepConfig& cfg) {
  nlohmann::json outputs = nlohmann::json::array();
  for (auto k : cfg.outputs) outputs.push_back(to_string(k));
  auto params = to_json(cfg.params);
  params.erase("sigma");
  return {{"params", params},
          {"sigma_grid", grid_json(cfg.sigma_grid)},
          {"omega_grid", grid_json(cfg.omega_grid)},
          {"outputs", outputs}};
}

}  // namespace triopo
