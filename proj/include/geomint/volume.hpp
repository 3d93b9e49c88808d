#ifndef GEOMINT_VOLUME_HPP
#define GEOMINT_VOLUME_HPP

#include <optional>

#include "geomint/polynomial.hpp"
#include "geomint/solvers.hpp"

namespace geomint {

/// Divergence-free field (u, v, w) on R^3 together with the antiderivative
/// P(x, y, z) = int u_x dy that drives the two-part splitting. P must be
/// exact (symbolic for polynomial fields, user-supplied otherwise).
struct DivergenceFree3D {
  std::function<double(double, double, double)> u, v, w;
  std::function<double(double, double, double)> u_x;
  std::function<double(double, double, double)> P;

  Vector eval(const Vector& x) const;
  VectorFieldProblem as_problem() const;
  /// FD divergence check at pseudorandom points (1e-10 scaled) and
  /// dP/dy == u_x consistency.
  void validate(unsigned seed = 0x5eed) const;
};

DivergenceFree3D divergence_free_from_polynomial(const PolynomialVectorField& field);

/// The worked 3D example field
///   xdot = y + x^2 + z^3, ydot = z + x y + x^4, zdot = x - 3 x z + y^5.
PolynomialVectorField vp_example_field();

/// fieldA = (u, -P, 0), fieldB = (0, v + P, w); both divergence-free, summing
/// to the original field.
std::pair<VectorFieldProblem, VectorFieldProblem> vp_split(const DivergenceFree3D& field);

/// Strang composition of implicit-midpoint sub-steps of the two split fields;
/// volume-preserving up to solver tolerance.
Vector vp_splitting_step(const DivergenceFree3D& field, const Vector& x, double h,
                         const SolverSettings& settings = {});

/// n-dimensional splitting of a polynomial divergence-free field into n-1
/// planar volume-preserving fields (coordinate pair by coordinate pair).
std::vector<PolynomialVectorField> vp_split_nd(const PolynomialVectorField& field);

Vector vp_splitting_step_nd(const PolynomialVectorField& field, const Vector& x, double h,
                            const SolverSettings& settings = {});

/// Triangular one-step map: x1 = g1(x1', x2, x3) (implicit), then
/// x2' = g2(x1', x2, x3) and x3' = g3(x1', x2', x3) explicit.
struct TriangularVPMap {
  std::function<double(double x1p, double x2, double x3)> g1;
  std::function<double(double x1p, double x2, double x3)> g2;
  std::function<double(double x1p, double x2p, double x3)> g3;
  double h = 0.0;

  Vector step(const Vector& x, double tolerance = 1e-13) const;
};

/// The volume-preserving integrator for vp_example_field: the implicit first
/// relation x1 = x1' - h(x2 + x1'^2 + x3^3) - h^2 x1'^3 followed by the two
/// explicit updates.
TriangularVPMap shang_quispel_example_map(double h);

Vector shang_quispel_example_step(const Vector& x, double h, double tolerance = 1e-13);

/// | d x1/d x1' - (d x2'/d x2)(d x3'/d x3) | by central differences; zero for
/// volume-preserving triangular maps.
double triangular_vp_condition_defect(const TriangularVPMap& map, const Vector& x,
                                      double delta = 1e-6);

/// |det DPhi| - 1 of an arbitrary step map, with DPhi from fd_jacobian.
double volume_defect(const StepMap& step, double t, const Vector& x, double h, double delta);

}  // namespace geomint

#endif
