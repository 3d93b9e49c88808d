#ifndef GEOMINT_CORE_HPP
#define GEOMINT_CORE_HPP

#include "geomint/problem.hpp"
#include "geomint/solvers.hpp"
#include "geomint/types.hpp"

namespace geomint {

/// Advance x0 with a one-step map over the uniform grid t_n = t0 + n h,
/// evaluating every observer at every accepted state. Deterministic given
/// its inputs. A solver failure at step k is rethrown with k attached.
Trajectory solve(const VectorFieldProblem& problem, const StepMap& step, const Vector& x0,
                 double t0, double h, long n_steps, const std::vector<Observer>& observers = {});

struct OrderEstimate {
  double slope = 0.0;
  bool saturated = false;  // error at the largest h already at round-off
  std::vector<std::pair<double, double>> samples;  // (h, error)
};

/// Least-squares slope of log(error) vs log(h) over a fixed time window
/// [t0, t0+duration]. `reference` gives the exact state at t0+duration;
/// when empty, a high-order reference is computed internally at h_min/100.
OrderEstimate observed_order(const VectorFieldProblem& problem, const StepMap& step,
                             const Vector& x0, double t0, double duration,
                             const std::vector<double>& h_list,
                             const std::function<Vector()>& reference = {});

/// Slope of a least-squares line through (t_i, y_i).
double fitted_slope(const std::vector<double>& t, const std::vector<double>& y);

}  // namespace geomint

#endif
