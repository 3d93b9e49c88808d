#ifndef GEOMINT_TYPES_HPP
#define GEOMINT_TYPES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace geomint {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Thrown when an implicit solve fails to converge or its linearization is
/// singular. Carries the last residual and, when raised inside a step loop,
/// the index of the offending step.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual, long step = -1)
      : std::runtime_error(what), residual_(residual), step_(step) {}
  double residual() const { return residual_; }
  long step() const { return step_; }

 private:
  double residual_;
  long step_;
};

/// Configuration or registry errors (unknown ids, inconsistent parameters).
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverSettings {
  double tolerance = 1e-12;
  int max_iterations = 50;
  double fd_step = 6.0e-6;  // ~ cbrt(machine epsilon)

  void validate() const {
    if (!(tolerance >= 10.0 * std::numeric_limits<double>::epsilon()))
      throw ConfigError("SolverSettings: tolerance below 10*eps");
    if (max_iterations < 1) throw ConfigError("SolverSettings: max_iterations < 1");
    if (!(fd_step > 0)) throw ConfigError("SolverSettings: fd_step <= 0");
  }
};

inline bool all_finite(const Vector& x) { return x.allFinite(); }

inline void require_finite(const Vector& x, const char* context) {
  if (!x.allFinite()) throw std::runtime_error(std::string("non-finite state in ") + context);
}

/// Named scalar observable evaluated along a trajectory.
struct Observer {
  std::string name;
  std::function<double(double t, const Vector& x)> eval;
};

/// Time-stamped states plus named observable channels of equal length.
struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
  std::vector<std::string> channel_names;
  std::vector<std::vector<double>> channels;  // channels[i] belongs to channel_names[i]

  std::size_t size() const { return times.size(); }

  const std::vector<double>& channel(const std::string& name) const {
    for (std::size_t i = 0; i < channel_names.size(); ++i)
      if (channel_names[i] == name) return channels[i];
    throw ConfigError("Trajectory: no channel named '" + name + "'");
  }

  void validate() const {
    for (std::size_t i = 1; i < times.size(); ++i)
      if (!(times[i] > times[i - 1]) && !(times[i] < times[i - 1]))
        throw std::runtime_error("Trajectory: times not strictly monotone");
    if (states.size() != times.size())
      throw std::runtime_error("Trajectory: states/times length mismatch");
    for (const auto& ch : channels)
      if (ch.size() != times.size())
        throw std::runtime_error("Trajectory: channel length mismatch");
  }
};

/// One-step map x_{n+1} = step(t_n, x_n, h).
using StepMap = std::function<Vector(double t, const Vector& x, double h)>;

}  // namespace geomint

#endif
