#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "triopo/sweep.hpp"

namespace triopo {

/// "%.12g": 12 significant digits, '.' decimal point.
std::string format_number(double v);

/// Column names of a sweep table. The 13 core columns always come first;
/// `with_spectra` appends the upper triangle of re(s); a trailing `status`
/// column holds "ok" or the row's error message.
std::vector<std::string> sweep_columns(bool with_spectra);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows, bool with_spectra);
nlohmann::json sweep_to_json(const std::vector<SweepRow>& rows, bool with_spectra);

nlohmann::json to_json(const OpoParams& p);
nlohmann::json to_json(const PointReport& r);
nlohmann::json to_json(const OracleReport& r);
void write_oracle_csv(std::ostream& os, const OracleReport& r);

/// Reads a SweepConfig; missing fields keep their defaults. Throws
/// ConfigError on unknown keys or wrong types.
SweepConfig sweep_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SweepConfig& cfg);

}  // namespace triopo
