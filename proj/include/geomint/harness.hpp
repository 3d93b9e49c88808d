#ifndef GEOMINT_HARNESS_HPP
#define GEOMINT_HARNESS_HPP

#include "geomint/registry.hpp"

namespace geomint {

struct ExperimentConfig {
  std::string problem_id;
  Json problem_params = Json::object();
  std::string integrator_id;
  Json integrator_params = Json::object();
  double h = 0.0;       // 0: use the problem's default
  long steps = 0;       // 0: use the problem's default
  std::vector<std::string> observables;  // empty: all the problem offers
  std::vector<std::string> diagnostics;
  std::string format = "csv";  // csv | json
  std::string out;             // empty: stdout
  std::uint64_t seed = 0;
  bool emit_plot_data = false;

  static ExperimentConfig from_json(const Json& j);
  Json to_json() const;
};

struct RunReport {
  std::vector<std::string> columns;  // step, t, observables..., diagnostics...
  Trajectory trajectory;             // channels in column order (after step, t)
  std::map<std::string, double> max_drift;    // per observable
  std::map<std::string, double> drift_slope;  // fitted |value - value_0| slope per time
  double wall_seconds = 0.0;

  std::string csv() const;  // deterministic, 17 significant digits, LF endings
  Json summary_json() const;
  Json full_json() const;
};

RunReport run_experiment(const ExperimentConfig& config);

struct ConvergenceRow {
  std::string integrator;
  double slope = 0.0;
  bool saturated = false;
  std::vector<std::pair<double, double>> samples;  // (h, error)
};

/// Observed-order table over h_list for one or more integrators (comma-split
/// config.integrator_id); the window is h_list.front() * round(duration/h).
std::vector<ConvergenceRow> convergence_table(const ExperimentConfig& config,
                                              const std::vector<double>& h_list,
                                              double duration);

std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

/// Entry point used by the command-line tool; returns the process exit code
/// (0 ok, 2 configuration/registry error, 3 numerical failure).
int cli_main(int argc, char** argv);

}  // namespace geomint

#endif
