#include "kato/report_io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "kato/errors.hpp"

namespace kato {

using json = nlohmann::json;

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json num(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

double num_of(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

double parse_real(const std::string& text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw ConfigError("not a number: '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string csv_header() {
  return "scenario,param_alpha,param_beta,param_n,measured,predicted,rel_error,slope,pass,walltime_s";
}

void write_csv(std::ostream& os, const std::vector<VerificationReport>& reports) {
  os << csv_header() << '\n';
  for (const auto& r : reports) {
    os << r.scenario << ',' << fmt(r.alpha) << ',' << fmt(r.beta) << ',' << r.n << ',' << fmt(r.measured) << ','
       << fmt(r.predicted) << ',' << fmt(r.rel_error) << ',' << fmt(r.slope) << ',' << (r.pass ? "true" : "false")
       << ',' << fmt(r.walltime_s) << '\n';
  }
}

void write_json(std::ostream& os, const std::vector<VerificationReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) {
    arr.push_back({{"scenario", r.scenario},
                   {"param_alpha", num(r.alpha)},
                   {"param_beta", num(r.beta)},
                   {"param_n", r.n},
                   {"measured", num(r.measured)},
                   {"predicted", num(r.predicted)},
                   {"rel_error", num(r.rel_error)},
                   {"slope", num(r.slope)},
                   {"pass", r.pass},
                   {"walltime_s", num(r.walltime_s)}});
  }
  os << arr.dump(2, ' ', false, json::error_handler_t::strict) << '\n';
}

std::vector<VerificationReport> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || trim(line) != csv_header()) throw ConfigError("CSV header mismatch");
  std::vector<VerificationReport> out;
  while (std::getline(is, line)) {
    if (trim(line).empty()) continue;
    const auto cells = split(trim(line), ',');
    if (cells.size() != 10) throw ConfigError("CSV row has " + std::to_string(cells.size()) + " cells");
    VerificationReport r;
    r.scenario = cells[0];
    r.alpha = parse_real(cells[1]);
    r.beta = parse_real(cells[2]);
    r.n = std::stoi(cells[3]);
    r.measured = parse_real(cells[4]);
    r.predicted = parse_real(cells[5]);
    r.rel_error = parse_real(cells[6]);
    r.slope = parse_real(cells[7]);
    if (cells[8] != "true" && cells[8] != "false") throw ConfigError("bad pass flag '" + cells[8] + "'");
    r.pass = cells[8] == "true";
    r.walltime_s = parse_real(cells[9]);
    out.push_back(r);
  }
  return out;
}

std::vector<VerificationReport> read_json(std::istream& is) {
  json arr;
  try {
    is >> arr;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad JSON report: ") + e.what());
  }
  std::vector<VerificationReport> out;
  for (const auto& o : arr) {
    VerificationReport r;
    r.scenario = o.at("scenario").get<std::string>();
    r.alpha = num_of(o.at("param_alpha"));
    r.beta = num_of(o.at("param_beta"));
    r.n = o.at("param_n").get<int>();
    r.measured = num_of(o.at("measured"));
    r.predicted = num_of(o.at("predicted"));
    r.rel_error = num_of(o.at("rel_error"));
    r.slope = num_of(o.at("slope"));
    r.pass = o.at("pass").get<bool>();
    r.walltime_s = num_of(o.at("walltime_s"));
    out.push_back(r);
  }
  return out;
}

void write_constants_csv(std::ostream& os, const std::vector<ConstantsReport>& rows) {
  os << "name,formula_value,oracle_value,rel_residual\n";
  for (const auto& r : rows) {
    os << '"' << r.name << '"' << ',' << fmt(r.formula_value) << ',' << fmt(r.oracle_value) << ','
       << fmt(r.rel_residual) << '\n';
  }
}

void write_constants_json(std::ostream& os, const std::vector<ConstantsReport>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"name", r.name},
                   {"formula_value", num(r.formula_value)},
                   {"oracle_value", num(r.oracle_value)},
                   {"rel_residual", num(r.rel_residual)}});
  }
  os << arr.dump(2) << '\n';
}

void write_density_csv(std::ostream& os, const DensityProfile& profile) {
  os << "x,density\n";
  for (std::size_t i = 0; i < profile.x.size(); ++i) os << fmt(profile.x[i]) << ',' << fmt(profile.density[i]) << '\n';
}

void write_density_json(std::ostream& os, const DensityProfile& profile) {
  json arr = json::array();
  for (std::size_t i = 0; i < profile.x.size(); ++i) arr.push_back({{"x", profile.x[i]}, {"density", num(profile.density[i])}});
  os << arr.dump(2) << '\n';
}

std::map<std::string, std::string> parse_config(std::istream& is) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    if (!out.emplace(key, value).second) throw ConfigError("config key '" + key + "' given twice");
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

std::string RunManifest::to_json() const {
  json j = {{"tool", "kato_lab"}, {"version", version}, {"timestamp", timestamp}, {"config", config},
            {"artifacts", artifacts}};
  return j.dump(2) + "\n";
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

}  // namespace kato
