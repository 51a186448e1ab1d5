#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pbk/cp1_geometry.hpp"
#include "pbk/output.hpp"
#include "pbk/types.hpp"

namespace pbk {

/// Malformed or inconsistent experiment configuration.
class ConfigError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Every experiment parameter. Experiments read the fields they need;
/// defaults_for() fills in the standard sweep of each experiment.
struct ExperimentConfig {
  std::string experiment;

  // k grid: an explicit list, or round(k_min r^i) up to k_max plus k_max itself.
  int k_min = 10;
  int k_max = 1000;
  double k_ratio = 1.25;
  std::vector<int> k_list;

  double e = 0.5;
  double t0 = kPi / 2;
  double a = 0.0;
  double b = 0.0;
  std::optional<ProjectivePoint> z0;
  int nodes = 0;

  std::string out;
  std::string svg;
  std::uint64_t seed = 42;
  bool timestamp = true;

  // selftest-hilbert
  int trials = 100;
  int dim_min = 1;
  int dim_max = 64;
  int spectrum_bound = 5;

  // heatmap
  std::string kind = "partial";
  int grid = 81;
  double extent = 2.0;

  // diagonal-microsupport
  double margin = 0.2;
  std::optional<ProjectivePoint> w0;

  // two-proj
  Vector3 axis1 = Vector3::UnitZ();
  Vector3 axis2 = -Vector3::UnitZ();
  Vector3 control_axis = Vector3(0.8660254037844386, 0.0, 0.5);
  std::optional<double> e2;

  static ExperimentConfig defaults_for(const std::string& experiment);

  std::vector<int> k_values() const;
  ProjectivePoint basepoint() const;  // z0, or the level point on {H = e} at angle 0
};

/// Names accepted by run_experiment.
const std::vector<std::string>& experiment_names();

/// Applies the keys of a JSON document on top of cfg. Unknown keys, wrong
/// types and a mismatching "experiment" are ConfigErrors.
void apply_json(ExperimentConfig& cfg, const std::string& json_text);

/// The complete configuration as JSON. Applying it to fresh defaults gives back c.
std::string to_json(const ExperimentConfig& cfg);

/// "re,im" for the chart point [re + i im : 1], or "a,b,c,d" for [a + ib : c + id].
ProjectivePoint parse_point(const std::string& text);

struct ExperimentResult {
  Table table;
  std::vector<std::pair<std::string, std::string>> summary;
  bool passed = true;
  std::variant<std::monostate, LinePlot, HeatmapPlot> plot;
};

ExperimentResult run_hilbert_selftest(const ExperimentConfig& cfg);
ExperimentResult run_orbit_heatmap(const ExperimentConfig& cfg);
ExperimentResult run_error_scaling(const ExperimentConfig& cfg);
ExperimentResult run_diagonal_and_microsupport(const ExperimentConfig& cfg);
ExperimentResult run_two_proj(const ExperimentConfig& cfg);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace pbk
