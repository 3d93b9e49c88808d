#include "geomint/harness.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace geomint {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const Json& j) {
  ExperimentConfig c;
  c.problem_id = j.value("problem", "");
  c.problem_params = j.value("problem_params", Json::object());
  c.integrator_id = j.value("integrator", "");
  c.integrator_params = j.value("integrator_params", Json::object());
  c.h = j.value("h", 0.0);
  c.steps = j.value("steps", 0L);
  if (j.contains("observables"))
    c.observables = j.at("observables").get<std::vector<std::string>>();
  if (j.contains("diagnostics"))
    c.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
  c.format = j.value("format", "csv");
  c.out = j.value("out", "");
  c.seed = j.value("seed", 0ULL);
  c.emit_plot_data = j.value("emit_plot_data", false);
  return c;
}

Json ExperimentConfig::to_json() const {
  Json j;
  j["problem"] = problem_id;
  j["problem_params"] = problem_params;
  j["integrator"] = integrator_id;
  j["integrator_params"] = integrator_params;
  j["h"] = h;
  j["steps"] = steps;
  j["observables"] = observables;
  j["diagnostics"] = diagnostics;
  j["format"] = format;
  j["out"] = out;
  j["seed"] = seed;
  j["emit_plot_data"] = emit_plot_data;
  return j;
}

std::string RunReport::csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (std::size_t n = 0; n < trajectory.size(); ++n) {
    out += std::to_string(n);
    out += ',';
    out += format_double(trajectory.times[n]);
    for (const auto& ch : trajectory.channels) {
      out += ',';
      out += format_double(ch[n]);
    }
    out += '\n';
  }
  return out;
}

Json RunReport::summary_json() const {
  Json j;
  j["max_drift"] = max_drift;
  j["drift_slope_per_time"] = drift_slope;
  j["wall_seconds"] = wall_seconds;
  j["rows"] = trajectory.size();
  return j;
}

Json RunReport::full_json() const {
  Json j;
  j["columns"] = columns;
  Json rows = Json::array();
  for (std::size_t n = 0; n < trajectory.size(); ++n) {
    Json row = Json::array();
    row.push_back(n);
    row.push_back(trajectory.times[n]);
    for (const auto& ch : trajectory.channels) row.push_back(ch[n]);
    rows.push_back(row);
  }
  j["data"] = rows;
  j["summary"] = summary_json();
  return j;
}

RunReport run_experiment(const ExperimentConfig& config) {
  const auto t_start = std::chrono::steady_clock::now();
  ProblemInstance problem = make_problem(config.problem_id, config.problem_params);
  const StepMap step = make_integrator(config.integrator_id, config.integrator_params, problem);

  const double h = config.h != 0.0 ? config.h : problem.default_h;
  const long steps = config.steps != 0 ? config.steps : problem.default_steps;

  // observable selection
  std::vector<Observer> observers;
  if (config.observables.empty()) {
    observers = problem.observables;
  } else {
    for (const auto& name : config.observables) {
      bool found = false;
      for (const auto& obs : problem.observables)
        if (obs.name == name) {
          observers.push_back(obs);
          found = true;
          break;
        }
      if (!found)
        throw ConfigError("problem '" + problem.id + "' has no observable '" + name + "'");
    }
  }

  RunReport report;
  report.trajectory =
      solve(problem.field, step, problem.initial_state, problem.t0, h, steps, observers);

  // diagnostics evaluated along the stored states
  for (const auto& name : config.diagnostics) {
    const Diagnostic diag = make_diagnostic(name);
    std::vector<double> channel;
    channel.reserve(report.trajectory.size());
    for (std::size_t n = 0; n < report.trajectory.size(); ++n)
      channel.push_back(
          diag(step, report.trajectory.times[n], report.trajectory.states[n], h));
    report.trajectory.channel_names.push_back(name);
    report.trajectory.channels.push_back(std::move(channel));
  }

  report.columns = {"step", "t"};
  for (const auto& name : report.trajectory.channel_names) report.columns.push_back(name);

  for (const auto& obs : observers) {
    const auto& ch = report.trajectory.channel(obs.name);
    double maxd = 0.0;
    std::vector<double> drift(ch.size());
    for (std::size_t n = 0; n < ch.size(); ++n) {
      drift[n] = std::abs(ch[n] - ch[0]);
      maxd = std::max(maxd, drift[n]);
    }
    report.max_drift[obs.name] = maxd;
    report.drift_slope[obs.name] =
        ch.size() > 1 ? fitted_slope(report.trajectory.times, drift) : 0.0;
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return report;
}

std::vector<ConvergenceRow> convergence_table(const ExperimentConfig& config,
                                              const std::vector<double>& h_list,
                                              double duration) {
  if (h_list.size() < 3) throw ConfigError("convergence: need at least 3 step sizes");
  ProblemInstance problem = make_problem(config.problem_id, config.problem_params);
  std::vector<ConvergenceRow> rows;
  for (const auto& integrator_id : split_csv_list(config.integrator_id)) {
    const StepMap step = make_integrator(integrator_id, config.integrator_params, problem);
    const OrderEstimate est = observed_order(problem.field, step, problem.initial_state,
                                             problem.t0, duration, h_list);
    rows.push_back({integrator_id, est.slope, est.saturated, est.samples});
  }
  return rows;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::string out = "integrator,h,error,slope,saturated\n";
  for (const auto& row : rows)
    for (const auto& [h, err] : row.samples) {
      out += row.integrator;
      out += ',';
      out += format_double(h);
      out += ',';
      out += format_double(err);
      out += ',';
      out += format_double(row.slope);
      out += ',';
      out += row.saturated ? "1" : "0";
      out += '\n';
    }
  return out;
}

namespace {

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  // atomic-ish: write then rename
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw ConfigError("cannot write to " + tmp);
    f << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw ConfigError("cannot move output into place at " + path);
}

void emit_plot_files(const RunReport& report, const std::string& base) {
  for (std::size_t i = 0; i < report.trajectory.channel_names.size(); ++i) {
    const std::string path = base + "." + report.trajectory.channel_names[i] + ".dat";
    std::string content;
    for (std::size_t n = 0; n < report.trajectory.size(); ++n) {
      content += format_double(report.trajectory.times[n]);
      content += ' ';
      content += format_double(report.trajectory.channels[i][n]);
      content += '\n';
    }
    write_output(path, content);
  }
}

int run_command(const ExperimentConfig& config) {
  const RunReport report = run_experiment(config);
  std::string content;
  if (config.format == "csv")
    content = report.csv();
  else if (config.format == "json")
    content = report.full_json().dump(2) + "\n";
  else
    throw ConfigError("unknown format '" + config.format + "'");
  write_output(config.out, content);
  if (config.emit_plot_data && !config.out.empty()) emit_plot_files(report, config.out);
  if (!config.out.empty()) {
    std::cerr << "wrote " << config.out << "\n";
    for (const auto& [name, drift] : report.max_drift)
      std::cerr << "  max |" << name << " - initial| = " << drift << "\n";
  }
  return 0;
}

int list_command(const std::string& what) {
  auto print = [](const std::vector<RegistryEntry>& entries) {
    for (const auto& e : entries) {
      std::cout << e.id << "  -  " << e.summary;
      if (!e.params_help.empty()) std::cout << "  [params: " << e.params_help << "]";
      std::cout << "\n";
    }
  };
  if (what == "problems")
    print(problem_registry());
  else if (what == "integrators")
    print(integrator_registry());
  else if (what == "diagnostics")
    print(diagnostic_registry());
  else
    throw ConfigError("list: expected problems|integrators|diagnostics, got '" + what + "'");
  return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"geomint: structure-preserving integration experiments"};
  // the step-size flag is --h, so the help flag keeps only its long form
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);

  ExperimentConfig config;
  std::string config_file, observables, diagnostics, h_list_str;
  std::string problem_params, integrator_params;
  double duration = 0.0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->set_help_flag("--help", "print help and exit");
    cmd->add_option("--config", config_file, "JSON config file (flags override it)");
    cmd->add_option("--problem", config.problem_id, "problem id");
    cmd->add_option("--problem-params", problem_params, "JSON object of problem parameters");
    cmd->add_option("--integrator", config.integrator_id, "integrator id");
    cmd->add_option("--integrator-params", integrator_params,
                    "JSON object of integrator parameters");
    cmd->add_option("--h", config.h, "step size");
    cmd->add_option("--steps", config.steps, "number of steps");
    cmd->add_option("--observables", observables, "comma-separated observable names");
    cmd->add_option("--diagnostics", diagnostics, "comma-separated diagnostic names");
    cmd->add_option("--out", config.out, "output path (default: stdout)");
    cmd->add_option("--format", config.format, "csv or json");
    cmd->add_option("--seed", config.seed, "seed recorded with the run");
    cmd->add_flag("--emit-plot-data", config.emit_plot_data,
                  "also write (t, value) pairs per observable next to --out");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "run one experiment");
  add_common(run_cmd);
  CLI::App* conv_cmd = app.add_subcommand("convergence", "observed-order table");
  add_common(conv_cmd);
  conv_cmd->add_option("--h-list", h_list_str, "comma-separated step sizes (>= 3)");
  conv_cmd->add_option("--duration", duration, "integration window (default 1.0)");
  CLI::App* list_cmd = app.add_subcommand("list", "list registry contents");
  list_cmd->set_help_flag("--help", "print help and exit");
  std::string what;
  list_cmd->add_option("what", what, "problems|integrators|diagnostics")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (list_cmd->parsed()) return list_command(what);

    ExperimentConfig file_config;
    if (!config_file.empty()) {
      std::ifstream f(config_file);
      if (!f) throw ConfigError("cannot open config file " + config_file);
      Json j = Json::parse(f);
      file_config = ExperimentConfig::from_json(j);
    }
    // flags override the file
    if (config.problem_id.empty()) config.problem_id = file_config.problem_id;
    if (config.integrator_id.empty()) config.integrator_id = file_config.integrator_id;
    if (config.h == 0.0) config.h = file_config.h;
    if (config.steps == 0) config.steps = file_config.steps;
    if (config.out.empty()) config.out = file_config.out;
    if (config.format == "csv" && file_config.format != "csv" && !file_config.format.empty())
      config.format = file_config.format;
    if (config.problem_params.empty()) config.problem_params = file_config.problem_params;
    if (config.integrator_params.empty())
      config.integrator_params = file_config.integrator_params;
    if (config.observables.empty()) config.observables = file_config.observables;
    if (config.diagnostics.empty()) config.diagnostics = file_config.diagnostics;

    if (!problem_params.empty()) config.problem_params = Json::parse(problem_params);
    if (!integrator_params.empty()) config.integrator_params = Json::parse(integrator_params);
    if (!observables.empty()) config.observables = split_csv_list(observables);
    if (!diagnostics.empty()) config.diagnostics = split_csv_list(diagnostics);

    if (config.problem_id.empty()) throw ConfigError("no problem selected");
    if (config.integrator_id.empty()) throw ConfigError("no integrator selected");

    if (run_cmd->parsed()) return run_command(config);

    if (conv_cmd->parsed()) {
      std::vector<double> h_list;
      for (const auto& tok : split_csv_list(h_list_str)) h_list.push_back(std::stod(tok));
      if (duration == 0.0) duration = 1.0;
      const auto rows = convergence_table(config, h_list, duration);
      write_output(config.out, convergence_csv(rows));
      return 0;
    }
    throw ConfigError("no subcommand");
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SolverError& e) {
    std::cerr << "numerical failure";
    if (e.step() >= 0) std::cerr << " at step " << e.step();
    std::cerr << ": " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace geomint
