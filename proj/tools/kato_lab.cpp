// kato_lab: smoothing-constant verification runs from the command line.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "kato/closed_forms.hpp"
#include "kato/errors.hpp"
#include "kato/experiments.hpp"
#include "kato/report_io.hpp"

namespace {

using namespace kato;

struct Flags {
  std::optional<double> alpha, beta, extent, tmax, tolerance, xmax;
  std::optional<int> dim;
  std::optional<std::size_t> grid_n, tsteps, cutoff_cells, points;
  std::optional<std::string> data, format, out;
  std::string config;
};

template <typename T>
T convert(const std::string& key, const std::string& text) {
  std::istringstream is(text);
  T v{};
  if (!(is >> v) || !(is >> std::ws).eof()) throw ConfigError("config key '" + key + "': bad value '" + text + "'");
  return v;
}

// Fills flags the command line left unset from the config file.
void merge_config(Flags& f, const std::map<std::string, std::string>& cfg) {
  for (const auto& [key, value] : cfg) {
    auto set = [&](auto& slot) {
      using T = typename std::decay_t<decltype(slot)>::value_type;
      if (!slot) slot = convert<T>(key, value);
    };
    if (key == "alpha") set(f.alpha);
    else if (key == "beta") set(f.beta);
    else if (key == "dim") set(f.dim);
    else if (key == "grid-n") set(f.grid_n);
    else if (key == "extent") set(f.extent);
    else if (key == "tmax") set(f.tmax);
    else if (key == "tsteps") set(f.tsteps);
    else if (key == "cutoff-cells") set(f.cutoff_cells);
    else if (key == "data") { if (!f.data) f.data = value; }
    else if (key == "format") { if (!f.format) f.format = value; }
    else if (key == "out") { if (!f.out) f.out = value; }
    else if (key == "tolerance") set(f.tolerance);
    else if (key == "xmax") set(f.xmax);
    else if (key == "points") set(f.points);
    else throw ConfigError("unknown config key '" + key + "'");
  }
}

void add_flags(CLI::App* app, Flags& f) {
  app->add_option("--alpha", f.alpha, "derivative order alpha");
  app->add_option("--beta", f.beta, "dispersion exponent beta");
  app->add_option("--dim", f.dim, "space dimension n");
  app->add_option("--grid-n", f.grid_n, "grid points (power of two)");
  app->add_option("--extent", f.extent, "grid half-width L");
  app->add_option("--tmax", f.tmax, "time horizon T");
  app->add_option("--tsteps", f.tsteps, "time panels per half line");
  app->add_option("--cutoff-cells", f.cutoff_cells, "origin cutoff in cells");
  app->add_option("--data", f.data, "data generator id");
  app->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--out", f.out, "output file (default: standard output)");
  app->add_option("--tolerance", f.tolerance, "pass tolerance");
  app->add_option("--config", f.config, "flat key = value config file");
}

std::map<std::string, std::string> resolved(const Flags& f, const std::string& command) {
  std::map<std::string, std::string> m{{"command", command}};
  auto put = [&](const char* key, const auto& slot) {
    if (slot) {
      std::ostringstream os;
      os.precision(17);
      os << *slot;
      m[key] = os.str();
    }
  };
  put("alpha", f.alpha);
  put("beta", f.beta);
  put("dim", f.dim);
  put("grid-n", f.grid_n);
  put("extent", f.extent);
  put("tmax", f.tmax);
  put("tsteps", f.tsteps);
  put("cutoff-cells", f.cutoff_cells);
  put("data", f.data);
  put("format", f.format);
  put("out", f.out);
  put("tolerance", f.tolerance);
  put("xmax", f.xmax);
  put("points", f.points);
  return m;
}

ScenarioConfig apply(ScenarioConfig c, const Flags& f) {
  if (f.dim) c.params.n = *f.dim;
  if (f.beta) c.params.beta = *f.beta;
  if (f.alpha) c.params.alpha = *f.alpha;
  else if (f.beta && c.id == "thm3-sup") c.params.alpha = 0.5 * (*f.beta - 1.0);
  if (f.grid_n) c.quad.grid.points = *f.grid_n;
  if (f.extent) c.quad.grid.extent = *f.extent;
  if (f.tmax) c.quad.time.horizon = *f.tmax;
  if (f.tsteps) c.quad.time.steps = *f.tsteps;
  if (f.cutoff_cells) c.quad.origin_cutoff = *f.cutoff_cells;
  if (f.data) {
    c.data = *f.data;
    if (c.id == "thm3-sup") c.detail = *f.data;
  }
  if (f.tolerance) c.tolerance = *f.tolerance;
  return c;
}

// Writes to --out (plus a manifest next to it) or to standard output.
void emit(const Flags& f, const std::string& command, const std::function<void(std::ostream&)>& write) {
  if (!f.out) {
    write(std::cout);
    return;
  }
  std::ofstream out(*f.out);
  if (!out) throw ConfigError("cannot write '" + *f.out + "'");
  write(out);
  RunManifest manifest;
  manifest.config = resolved(f, command);
  manifest.timestamp = utc_timestamp();
  const std::string manifest_path = *f.out + ".manifest.json";
  manifest.artifacts = {*f.out, manifest_path};
  std::ofstream(manifest_path) << manifest.to_json();
}

bool json_format(const Flags& f) { return f.format && *f.format == "json"; }

int emit_reports(const Flags& f, const std::string& command, const std::vector<VerificationReport>& reports) {
  bool all = true;
  for (const auto& r : reports) {
    std::fprintf(stderr, "%s %-48s measured=%.10g predicted=%.10g rel_error=%.3g (%.2fs)\n", r.pass ? "PASS" : "FAIL",
                 r.scenario.c_str(), r.measured, r.predicted, r.rel_error, r.walltime_s);
    if (!r.error.empty()) std::fprintf(stderr, "     error: %s\n", r.error.c_str());
    all = all && r.pass;
  }
  emit(f, command, [&](std::ostream& os) { json_format(f) ? write_json(os, reports) : write_csv(os, reports); });
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kato smoothing verification workbench"};
  app.require_subcommand(1);
  Flags flags;
  std::string scenario;

  auto* constants = app.add_subcommand("constants", "closed forms against their quadrature oracles");
  auto* verify = app.add_subcommand("verify", "run one scenario from the catalog");
  auto* sweep = app.add_subcommand("sweep", "run the whole catalog");
  auto* density = app.add_subcommand("density", "time-integrated density profile D(x)");
  for (auto* sub : {constants, verify, sweep, density}) add_flags(sub, flags);
  verify->add_option("scenario", scenario, "scenario id")->required();
  density->add_option("--xmax", flags.xmax, "scan half-width (default 8)");
  density->add_option("--points", flags.points, "scan points (default 801)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!flags.config.empty()) merge_config(flags, read_config_file(flags.config));
    if (flags.format && *flags.format != "csv" && *flags.format != "json") throw ConfigError("--format must be csv or json");

    if (constants->parsed()) {
      const auto rows = constants_reports();
      const double tol = flags.tolerance.value_or(1e-6);
      bool all = true;
      for (const auto& r : rows) all = all && r.rel_residual <= tol;
      emit(flags, "constants", [&](std::ostream& os) {
        json_format(flags) ? write_constants_json(os, rows) : write_constants_csv(os, rows);
      });
      return all ? 0 : 1;
    }

    if (verify->parsed() || sweep->parsed()) {
      std::vector<ScenarioConfig> configs = verify->parsed() ? catalog_entries(scenario) : catalog();
      std::vector<ScenarioConfig> chosen;
      std::set<std::string> seen;
      for (auto& c : configs) {
        c = apply(c, flags);
        c.validate();
        std::ostringstream key;
        key.precision(17);
        key << c.id << '|' << c.detail << '|' << c.params.n << '|' << c.params.alpha << '|' << c.params.beta;
        if (seen.insert(key.str()).second) chosen.push_back(c);
      }
      const std::string command = verify->parsed() ? "verify " + scenario : "sweep";
      return emit_reports(flags, command, run_sweep(chosen));
    }

    if (density->parsed()) {
      const double beta = flags.beta.value_or(2.0);
      const double alpha = flags.alpha.value_or(0.5 * (beta - 1.0));
      const LineData data = make_line_data(flags.data.value_or("odd-gaussian"));
      const GridSpec grid{flags.extent.value_or(60.0), flags.grid_n.value_or(4096), GridKind::line};
      grid.validate();
      const std::size_t points = flags.points.value_or(801);
      const double xmax = flags.xmax.value_or(8.0);
      if (points < 2 || !(xmax > 0.0)) throw ConfigError("density scan needs --points >= 2 and --xmax > 0");
      std::vector<double> xs(points);
      for (std::size_t i = 0; i < points; ++i) xs[i] = -xmax + 2.0 * xmax * static_cast<double>(i) / (points - 1);
      const DensityProfile profile = density_profile(forward_transform(sample(grid, data.f)), xs, alpha, beta);
      emit(flags, "density", [&](std::ostream& os) {
        json_format(flags) ? write_density_json(os, profile) : write_density_csv(os, profile);
      });
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "kato_lab: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
