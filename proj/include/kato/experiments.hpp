#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kato/functionals.hpp"
#include "kato/params.hpp"

namespace kato {

/// Closed-form initial data on the line, L2-normalized scaling
/// lambda^{1/2} f(lambda x).
struct LineData {
  std::string id;
  double scale = 1.0;
  std::function<cplx(double)> f;
  // Exact ||phi_0||^2 (independent of the scale).
  double norm_sq = 0.0;
  ParityTag parity = ParityTag::mixed;
};

/// Ids: odd-gaussian x e^{-x^2}, even-gaussian e^{-x^2}, gaussian e^{-x^2/2},
/// hermite3 x^3 e^{-x^2}, mixed (1 + x) e^{-x^2}.
LineData make_line_data(const std::string& id, double scale = 1.0);
std::vector<std::string> line_data_ids();

/// phi_hat_0(r w) = g(r) Y_l(w) in three dimensions with g(r) = c r^l e^{-r^2/2};
/// l = 0 is the transform of the radial Gaussian e^{-|x|^2/2}.
RadialProfile make_radial_profile(int l, const GridSpec& grid);

enum class Comparison { equality, upper_bound, slope };

std::string to_string(Comparison c);

struct ScenarioConfig {
  std::string id;
  // Distinguishes catalog entries sharing an id (data id, constant name).
  std::string detail;
  DispersionParams params;
  std::string data = "odd-gaussian";
  double scale = 1.0;
  QuadratureSpec quad;
  // Origin cutoffs in cells for the divergence probe.
  std::vector<std::size_t> probe_ladder{4, 8, 16, 32};
  double tolerance = 1e-2;
  Comparison comparison = Comparison::equality;

  /// Throws on parameters outside the scenario's admissible range, on
  /// non-positive tolerances and on ladders that are too short.
  void validate() const;
};

struct VerificationReport {
  std::string scenario;
  double alpha = 0.0;
  double beta = 0.0;
  int n = 1;
  double measured = 0.0;
  double predicted = 0.0;
  double rel_error = 0.0;
  double slope = 0.0;  // NaN when the scenario has no convergence slope
  bool pass = false;
  double walltime_s = 0.0;
  std::string error;  // empty unless the scenario threw
};

/// pass flag of a report, as a function of measured, predicted and tolerance.
bool judge(Comparison c, double measured, double predicted, double tolerance);

/// Scenario ids known to run_scenario.
std::vector<std::string> scenario_ids();

/// Default configuration of each catalog entry for an id; the catalog is the
/// concatenation over scenario_ids().
std::vector<ScenarioConfig> catalog_entries(const std::string& id);
std::vector<ScenarioConfig> catalog();

/// Runs one scenario. Never throws: failures come back as a report with
/// pass = false and the message in `error`.
VerificationReport run_scenario(const ScenarioConfig& config);

/// Runs the configs (in parallel when workers allow) and returns the
/// reports in input order.
std::vector<VerificationReport> run_sweep(const std::vector<ScenarioConfig>& configs);

}  // namespace kato
