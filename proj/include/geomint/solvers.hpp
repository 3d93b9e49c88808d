#ifndef GEOMINT_SOLVERS_HPP
#define GEOMINT_SOLVERS_HPP

#include "geomint/types.hpp"

namespace geomint {

/// Central-difference Jacobian of an arbitrary map; entry error O(delta^2)
/// for smooth maps.
Matrix fd_jacobian(const std::function<Vector(const Vector&)>& map, const Vector& x,
                   double delta);

/// Fixed-point iteration for x = phi(x). Converges for contractions; the
/// returned value satisfies ||x - phi(x)||_inf <= settings.tolerance.
Vector fixed_point_solve(const std::function<Vector(const Vector&)>& map, Vector guess,
                         const SolverSettings& settings);

/// Damped-free Newton iteration for F(x) = 0 with analytic or FD Jacobian.
Vector newton_solve(const std::function<Vector(const Vector&)>& residual, Vector guess,
                    const SolverSettings& settings,
                    const std::function<Matrix(const Vector&)>& jacobian = {});

/// Fixed-point iteration with Newton fallback on x = phi(x); the workhorse
/// behind every implicit stepper here.
Vector solve_implicit(const std::function<Vector(const Vector&)>& map, const Vector& guess,
                      const SolverSettings& settings);

/// Safeguarded scalar Newton (bisection fallback) for f(x) = 0 on a bracket
/// grown from the guess.
double solve_scalar(const std::function<double(double)>& f, double guess,
                    double tolerance = 1e-13, int max_iterations = 100);

}  // namespace geomint

#endif
