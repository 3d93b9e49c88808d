#include "geomint/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace geomint {

Matrix VectorFieldProblem::jacobian(double t, const Vector& x, double fd_delta) const {
  if (rhs_jacobian) return rhs_jacobian(t, x);
  return fd_jacobian([&](const Vector& y) { return rhs(t, y); }, x, fd_delta);
}

VectorFieldProblem make_autonomous_problem(int dimension,
                                           std::function<Vector(const Vector&)> f,
                                           std::function<Matrix(const Vector&)> jac,
                                           int polynomial_degree) {
  VectorFieldProblem p;
  p.dimension = dimension;
  p.autonomous = true;
  p.polynomial_degree = polynomial_degree;
  p.rhs = [f = std::move(f)](double, const Vector& x) { return f(x); };
  if (jac) p.rhs_jacobian = [jac = std::move(jac)](double, const Vector& x) { return jac(x); };
  return p;
}

Matrix fd_jacobian(const std::function<Vector(const Vector&)>& map, const Vector& x,
                   double delta) {
  if (!(delta > 0)) throw ConfigError("fd_jacobian: delta must be positive");
  const Eigen::Index n = x.size();
  Vector xp = x, xm = x;
  Matrix J;
  for (Eigen::Index j = 0; j < n; ++j) {
    xp(j) += delta;
    xm(j) -= delta;
    const Vector col = (map(xp) - map(xm)) / (2.0 * delta);
    if (J.size() == 0) J.resize(col.size(), n);
    J.col(j) = col;
    xp(j) = x(j);
    xm(j) = x(j);
  }
  return J;
}

Vector fixed_point_solve(const std::function<Vector(const Vector&)>& map, Vector guess,
                         const SolverSettings& settings) {
  settings.validate();
  double residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it < settings.max_iterations; ++it) {
    Vector next = map(guess);
    if (!next.allFinite())
      throw SolverError("fixed_point_solve: iterate became non-finite", residual);
    residual = (next - guess).lpNorm<Eigen::Infinity>();
    guess = std::move(next);
    if (residual <= settings.tolerance) return guess;
  }
  throw SolverError("fixed_point_solve: no convergence after " +
                        std::to_string(settings.max_iterations) +
                        " iterations, last residual " + std::to_string(residual),
                    residual);
}

Vector newton_solve(const std::function<Vector(const Vector&)>& residual, Vector guess,
                    const SolverSettings& settings,
                    const std::function<Matrix(const Vector&)>& jacobian) {
  settings.validate();
  double rnorm = std::numeric_limits<double>::infinity();
  for (int it = 0; it < settings.max_iterations; ++it) {
    const Vector F = residual(guess);
    if (!F.allFinite()) throw SolverError("newton_solve: residual non-finite", rnorm);
    rnorm = F.lpNorm<Eigen::Infinity>();
    if (rnorm <= settings.tolerance) return guess;
    const double scale = std::max(1.0, guess.lpNorm<Eigen::Infinity>());
    const Matrix J = jacobian ? jacobian(guess)
                              : fd_jacobian(residual, guess, settings.fd_step * scale);
    Eigen::FullPivLU<Matrix> lu(J);
    if (!lu.isInvertible())
      throw SolverError("newton_solve: singular linearization", rnorm);
    const Vector dx = lu.solve(F);
    if (!dx.allFinite()) throw SolverError("newton_solve: update non-finite", rnorm);
    guess -= dx;
  }
  const Vector F = residual(guess);
  rnorm = F.lpNorm<Eigen::Infinity>();
  if (rnorm <= settings.tolerance) return guess;
  throw SolverError("newton_solve: no convergence, last residual " + std::to_string(rnorm),
                    rnorm);
}

Vector solve_implicit(const std::function<Vector(const Vector&)>& map, const Vector& guess,
                      const SolverSettings& settings) {
  try {
    return fixed_point_solve(map, guess, settings);
  } catch (const SolverError&) {
    return newton_solve([&](const Vector& x) -> Vector { return x - map(x); }, guess,
                        settings);
  }
}

double solve_scalar(const std::function<double(double)>& f, double guess, double tolerance,
                    int max_iterations) {
  double x = guess;
  double lo = 0, hi = 0;
  bool bracketed = false;
  double flo = 0;
  // try to bracket a sign change around the guess
  double fx = f(x);
  if (std::abs(fx) <= tolerance) return x;
  double width = std::max(0.1, 0.1 * std::abs(x));
  for (int k = 0; k < 60 && !bracketed; ++k) {
    const double a = x - width, b = x + width;
    const double fa = f(a), fb = f(b);
    if (std::isfinite(fa) && fa * fx < 0) { lo = a; hi = x; flo = fa; bracketed = true; }
    else if (std::isfinite(fb) && fx * fb < 0) { lo = x; hi = b; flo = fx; bracketed = true; }
    else width *= 1.6;
  }
  const double delta = std::cbrt(std::numeric_limits<double>::epsilon());
  for (int it = 0; it < max_iterations; ++it) {
    fx = f(x);
    if (std::abs(fx) <= tolerance) return x;
    if (bracketed) {
      if (fx * flo < 0) hi = x; else { lo = x; flo = fx; }
    }
    const double step = delta * std::max(1.0, std::abs(x));
    const double dfx = (f(x + step) - f(x - step)) / (2 * step);
    double xn = (dfx != 0 && std::isfinite(dfx)) ? x - fx / dfx
                                                 : std::numeric_limits<double>::quiet_NaN();
    if (bracketed && (!(xn > std::min(lo, hi)) || !(xn < std::max(lo, hi)) || !std::isfinite(xn)))
      xn = 0.5 * (lo + hi);  // bisection fallback
    if (!std::isfinite(xn))
      throw SolverError("solve_scalar: iteration left the real line", std::abs(fx));
    x = xn;
  }
  fx = f(x);
  if (std::abs(fx) <= tolerance) return x;
  throw SolverError("solve_scalar: no convergence, residual " + std::to_string(std::abs(fx)),
                    std::abs(fx));
}

Trajectory solve(const VectorFieldProblem& problem, const StepMap& step, const Vector& x0,
                 double t0, double h, long n_steps, const std::vector<Observer>& observers) {
  if (h == 0) throw ConfigError("solve: step size must be nonzero");
  if (n_steps < 0) throw ConfigError("solve: negative step count");
  if (x0.size() != problem.dimension) throw ConfigError("solve: x0 dimension mismatch");
  require_finite(x0, "solve(initial state)");

  Trajectory traj;
  traj.times.reserve(n_steps + 1);
  traj.states.reserve(n_steps + 1);
  for (const auto& obs : observers) {
    traj.channel_names.push_back(obs.name);
    traj.channels.emplace_back();
    traj.channels.back().reserve(n_steps + 1);
  }

  Vector x = x0;
  for (long n = 0; n <= n_steps; ++n) {
    const double t = t0 + static_cast<double>(n) * h;
    traj.times.push_back(t);
    traj.states.push_back(x);
    for (std::size_t i = 0; i < observers.size(); ++i)
      traj.channels[i].push_back(observers[i].eval(t, x));
    if (n == n_steps) break;
    try {
      x = step(t, x, h);
    } catch (const SolverError& e) {
      throw SolverError("step " + std::to_string(n) + ": " + e.what(), e.residual(), n);
    }
    if (!x.allFinite())
      throw SolverError("step " + std::to_string(n) + ": state became non-finite",
                        std::numeric_limits<double>::infinity(), n);
  }
  return traj;
}

double fitted_slope(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size() || t.size() < 2) throw ConfigError("fitted_slope: bad input");
  const double n = static_cast<double>(t.size());
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    st += t[i]; sy += y[i]; stt += t[i] * t[i]; sty += t[i] * y[i];
  }
  const double denom = n * stt - st * st;
  if (denom == 0) throw ConfigError("fitted_slope: degenerate abscissae");
  return (n * sty - st * sy) / denom;
}

namespace {

Vector rk4_reference_step(const VectorFieldProblem& p, double t, const Vector& x, double h) {
  const Vector k1 = p.rhs(t, x);
  const Vector k2 = p.rhs(t + 0.5 * h, x + 0.5 * h * k1);
  const Vector k3 = p.rhs(t + 0.5 * h, x + 0.5 * h * k2);
  const Vector k4 = p.rhs(t + h, x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

OrderEstimate observed_order(const VectorFieldProblem& problem, const StepMap& step,
                             const Vector& x0, double t0, double duration,
                             const std::vector<double>& h_list,
                             const std::function<Vector()>& reference) {
  if (h_list.size() < 3) throw ConfigError("observed_order: need >= 3 step sizes");
  Vector ref;
  if (reference) {
    ref = reference();
  } else {
    const double h_min = *std::min_element(h_list.begin(), h_list.end());
    const double h_ref = h_min / 100.0;
    const long n_ref = std::lround(duration / h_ref);
    Vector x = x0;
    for (long i = 0; i < n_ref; ++i)
      x = rk4_reference_step(problem, t0 + i * h_ref, x, h_ref);
    // land exactly on t0 + duration
    const double rem = duration - n_ref * h_ref;
    if (std::abs(rem) > 1e-14 * std::abs(duration))
      x = rk4_reference_step(problem, t0 + n_ref * h_ref, x, rem);
    ref = x;
  }

  OrderEstimate est;
  const double scale = std::max(1.0, ref.lpNorm<Eigen::Infinity>());
  const double floor = 100.0 * std::numeric_limits<double>::epsilon() * scale;
  double h_max = 0, err_at_hmax = 0;
  for (double h : h_list) {
    const double steps = duration / h;
    const long n = std::lround(steps);
    if (std::abs(steps - n) > 1e-9 * std::max(1.0, std::abs(steps)))
      throw ConfigError("observed_order: duration/h is not an integer");
    Vector x = x0;
    for (long i = 0; i < n; ++i) x = step(t0 + i * h, x, h);
    const double err = (x - ref).lpNorm<Eigen::Infinity>();
    est.samples.emplace_back(h, err);
    if (h > h_max) { h_max = h; err_at_hmax = err; }
  }
  if (err_at_hmax < floor) {
    est.saturated = true;
    est.slope = 0.0;
    return est;
  }
  std::vector<double> lh, le;
  for (const auto& [h, e] : est.samples) {
    if (e < floor) continue;  // drop round-off-dominated points
    lh.push_back(std::log(h));
    le.push_back(std::log(e));
  }
  if (lh.size() < 2) {
    est.saturated = true;
    est.slope = 0.0;
    return est;
  }
  est.slope = fitted_slope(lh, le);
  return est;
}

}  // namespace geomint
