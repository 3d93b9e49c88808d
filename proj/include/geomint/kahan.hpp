#ifndef GEOMINT_KAHAN_HPP
#define GEOMINT_KAHAN_HPP

#include "geomint/core.hpp"

namespace geomint {

/// f_i(x) = sum_jk a_ijk x_j x_k + sum_j b_ij x_j + c_i with a_ijk = a_ikj.
/// The quadratic tensor is stored as one symmetric matrix per component.
struct QuadraticVectorField {
  std::vector<Matrix> quadratic;  // quadratic[i](j, k) = a_ijk
  Matrix linear;                  // b
  Vector constant;                // c

  int dimension() const { return static_cast<int>(constant.size()); }
  Vector eval(const Vector& x) const;
  /// f'(x)_ik = 2 sum_j a_ijk x_j + b_ik
  Matrix jacobian(const Vector& x) const;
  /// bilinear contraction: row i of abar(x) is a_i(x, .) = sum_j a_ijk x_j
  Matrix abar(const Vector& x) const;
  VectorFieldProblem as_problem() const;

  /// a_ijk symmetry, plus agreement with a registered closed form at
  /// pseudorandom points (1e-12) when one is supplied.
  void validate(const std::function<Vector(const Vector&)>& closed_form = {},
                unsigned seed = 0x5eed) const;
};

/// Exact tensor-contraction Jacobian f'(x).
Matrix field_jacobian(const QuadraticVectorField& field, const Vector& x);

/// One step of Kahan's linearly implicit discretization: a single dense solve
/// (I - h abar(x) - h/2 B) x' = x + h/2 B x + h c.
Vector kahan_step(const QuadraticVectorField& field, const Vector& x, double h);

/// The Runge-Kutta form (x'-x)/h = 2 f((x+x')/2) - 1/2 f(x) - 1/2 f(x');
/// agrees with kahan_step on quadratic fields.
Vector kahan_rk_form_step(const QuadraticVectorField& field, const Vector& x, double h,
                          const SolverSettings& settings = {});

/// xdot = S grad H with cubic H and constant skew S.
struct CubicHamiltonianStructure {
  Matrix S;
  std::function<double(const Vector&)> H;
  std::function<Vector(const Vector&)> grad_H;

  void validate(const QuadraticVectorField& field, unsigned seed = 0x5eed) const;
};

/// Htilde(x) = H(x) + (h/3) grad H(x)^T (I - (h/2) f'(x))^{-1} f(x); conserved
/// exactly by Kahan's method for constant-S cubic-H fields.
double modified_energy(const CubicHamiltonianStructure& structure,
                       const QuadraticVectorField& field, const Vector& x, double h);

/// Same formula for an arbitrary scalar function given by value and gradient
/// (used for families whose conserved quantity is not a cubic polynomial).
double modified_energy_value(double H_at_x, const Vector& grad_H_at_x,
                             const QuadraticVectorField& field, const Vector& x, double h);

/// w(x) = 1/det(I - (h/2) f'(x)); measure conservation means
/// |det DPhi(x)| w(Phi(x))/w(x) = 1.
double modified_measure_weight(const QuadraticVectorField& field, const Vector& x, double h);

}  // namespace geomint

#endif
