#ifndef GEOMINT_INTEGRAL_PRESERVING_HPP
#define GEOMINT_INTEGRAL_PRESERVING_HPP

#include "geomint/core.hpp"

namespace geomint {

/// Gauss-Legendre nodes and weights on [0, 1] (Golub-Welsch).
std::pair<std::vector<double>, std::vector<double>> gauss_legendre_rule(int q);

/// xdot = S(x) grad I(x) with skew S; optionally a second integral J with a
/// fully antisymmetric tensor S3 so that xdot_i = S3_ijk dI/dx_j dJ/dx_k.
struct FirstIntegralSystem {
  VectorFieldProblem field;
  std::function<double(const Vector&)> integral;
  std::function<Vector(const Vector&)> grad_integral;
  std::function<Matrix(const Vector&)> skew;  // S(x)

  // optional two-integral structure
  std::function<double(const Vector&)> second_integral;
  std::function<Vector(const Vector&)> grad_second_integral;
  std::function<std::vector<Matrix>(const Vector&)> skew_tensor;  // S3[i](j,k)

  bool has_second_integral() const { return static_cast<bool>(second_integral); }
  void validate(unsigned seed = 0x5eed) const;
};

/// S(x) = (f grad I^T - grad I f^T)/||grad I||^2; requires f . grad I = 0 and
/// grad I != 0 wherever it is evaluated.
std::function<Matrix(const Vector&)> skew_from_field_and_gradient(
    std::function<Vector(const Vector&)> f, std::function<Vector(const Vector&)> grad_I);

enum class DiscreteGradientKind { itoh_abe, avf };

/// Two-point gradient with the exact increment property
/// (x' - x) . gradbar = I(x') - I(x) and gradbar(x, x) = grad I(x).
struct DiscreteGradient {
  DiscreteGradientKind kind = DiscreteGradientKind::itoh_abe;
  int quadrature = 8;  // AVF kind only

  Vector eval(const std::function<double(const Vector&)>& I,
              const std::function<Vector(const Vector&)>& grad_I, const Vector& x,
              const Vector& xp) const;
};

/// Coordinate-increment discrete gradient; degenerate increments fall back to
/// the partial derivative at the mixed point.
Vector itoh_abe_gradient(const std::function<double(const Vector&)>& I, const Vector& x,
                         const Vector& xp,
                         const std::function<Vector(const Vector&)>& grad_I = {});

/// Mean-value discrete gradient: integral of grad I along the segment.
Vector avf_gradient(const std::function<Vector(const Vector&)>& grad_I, const Vector& x,
                    const Vector& xp, int quadrature);

enum class SkewApproximationKind { left, midpoint };

/// Sbar(x, x'): either S(x) or the second-order choice S((x + x')/2).
struct SkewApproximation {
  SkewApproximationKind kind = SkewApproximationKind::midpoint;
  Matrix eval(const FirstIntegralSystem& sys, const Vector& x, const Vector& xp) const;
};

/// Average vector field step: (x'-x)/h = sum_k w_k f(xi_k x' + (1-xi_k) x)
/// with a Gauss-Legendre rule exact for the declared polynomial degree
/// (q = 0 picks automatically; default 8 for undeclared fields).
Vector avf_step(const VectorFieldProblem& problem, const Vector& x, double h,
                const SolverSettings& settings = {}, int quadrature = 0);

/// || integral - quadrature || estimate for the AVF right-hand side, obtained
/// by comparing the q-point rule against 2q points.
double avf_quadrature_residual(const VectorFieldProblem& problem, const Vector& x,
                               const Vector& xp, int quadrature);

/// (x'-x)/h = 1/6 [f(x) + 4 f((x+x')/2) + f(x')]; AVF with Simpson's rule,
/// energy-exact for quartic Hamiltonians (cubic fields).
Vector simpson_rk_step(const VectorFieldProblem& problem, const Vector& x, double h,
                       const SolverSettings& settings = {});

/// (x'-x)/h = Sbar(x,x') gradbar I(x,x'); conserves I to solver tolerance.
Vector discrete_gradient_step(const FirstIntegralSystem& sys, const DiscreteGradient& grad,
                              const SkewApproximation& skew, const Vector& x, double h,
                              const SolverSettings& settings = {});

/// (x'-x)/h = S3bar_ijk gradbar I_j gradbar J_k; conserves both I and J.
Vector two_integral_step(const FirstIntegralSystem& sys, const Vector& x, double h,
                         const SolverSettings& settings = {},
                         const DiscreteGradient& grad = {},
                         SkewApproximationKind skew_kind = SkewApproximationKind::midpoint);

}  // namespace geomint

#endif
