#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "kato/closed_forms.hpp"
#include "kato/experiments.hpp"
#include "kato/functionals.hpp"

namespace kato {

inline constexpr const char* tool_version = "0.1.0";

/// scenario,param_alpha,param_beta,param_n,measured,predicted,rel_error,slope,pass,walltime_s
std::string csv_header();

/// Reals are written with 17 significant digits; NaN is "nan" in CSV and
/// null in JSON.
void write_csv(std::ostream& os, const std::vector<VerificationReport>& reports);
void write_json(std::ostream& os, const std::vector<VerificationReport>& reports);

std::vector<VerificationReport> read_csv(std::istream& is);
std::vector<VerificationReport> read_json(std::istream& is);

void write_constants_csv(std::ostream& os, const std::vector<ConstantsReport>& rows);
void write_constants_json(std::ostream& os, const std::vector<ConstantsReport>& rows);

void write_density_csv(std::ostream& os, const DensityProfile& profile);
void write_density_json(std::ostream& os, const DensityProfile& profile);

/// Flat `key = value` text; '#' starts a comment. Throws ConfigError on
/// malformed lines and duplicate keys.
std::map<std::string, std::string> parse_config(std::istream& is);
std::map<std::string, std::string> read_config_file(const std::string& path);

struct RunManifest {
  std::string version = tool_version;
  std::map<std::string, std::string> config;
  std::string timestamp;  // UTC, ISO 8601
  std::vector<std::string> artifacts;

  std::string to_json() const;
};

std::string utc_timestamp();

}  // namespace kato
