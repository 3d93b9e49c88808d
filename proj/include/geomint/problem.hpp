#ifndef GEOMINT_PROBLEM_HPP
#define GEOMINT_PROBLEM_HPP

#include "geomint/types.hpp"

namespace geomint {

/// First-order ODE xdot = f(t, x) with optional analytic Jacobian.
/// `polynomial_degree` < 0 means "not declared"; when declared it lets
/// quadrature-based integrators pick an exact rule.
struct VectorFieldProblem {
  int dimension = 0;
  bool autonomous = true;
  int polynomial_degree = -1;
  std::function<Vector(double t, const Vector& x)> rhs;
  std::function<Matrix(double t, const Vector& x)> rhs_jacobian;  // may be empty

  Vector eval(double t, const Vector& x) const {
    if (x.size() != dimension) throw ConfigError("VectorFieldProblem: dimension mismatch");
    return rhs(t, x);
  }

  bool has_jacobian() const { return static_cast<bool>(rhs_jacobian); }

  /// Analytic Jacobian when supplied, central-difference otherwise.
  Matrix jacobian(double t, const Vector& x, double fd_delta) const;
};

VectorFieldProblem make_autonomous_problem(int dimension,
                                           std::function<Vector(const Vector&)> f,
                                           std::function<Matrix(const Vector&)> jac = {},
                                           int polynomial_degree = -1);

}  // namespace geomint

#endif
