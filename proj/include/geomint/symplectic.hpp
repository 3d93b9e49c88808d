#ifndef GEOMINT_SYMPLECTIC_HPP
#define GEOMINT_SYMPLECTIC_HPP

#include "geomint/core.hpp"

namespace geomint {

/// Canonical Hamiltonian system on R^{2d}; states are packed z = (p, q).
struct HamiltonianSystem {
  int dof = 0;  // d
  std::function<double(const Vector& p, const Vector& q)> energy;
  std::function<Vector(const Vector& p, const Vector& q)> dH_dp;
  std::function<Vector(const Vector& p, const Vector& q)> dH_dq;

  double energy_z(const Vector& z) const {
    return energy(z.head(dof), z.tail(dof));
  }

  /// pdot = -dH/dq, qdot = dH/dp as a first-order field on z = (p, q).
  VectorFieldProblem as_problem() const;

  /// Check the supplied gradients against finite differences of H at a few
  /// pseudorandom points (1e-6 relative).
  void validate(unsigned seed = 0x5eed) const;
};

struct ButcherTableau {
  Matrix A;
  Vector b;
  Vector c;

  int stages() const { return static_cast<int>(b.size()); }
  void validate() const;  // row-sum consistency c_i = sum_j A_ij
};

ButcherTableau gauss_legendre_tableau(int s);  // s in {1,2,3}, order 2s
ButcherTableau explicit_euler_tableau();
ButcherTableau classical_rk4_tableau();
/// The three-stage, third-order explicit tableau (0; 1/2; -1,2 | 1/6,2/3,1/6).
ButcherTableau explicit_rk3_tableau();

/// General implicit Runge-Kutta step in stage-derivative form
/// K_i = f(t + c_i h, x + h sum_j A_ij K_j).
Vector implicit_rk_step(const VectorFieldProblem& problem, const ButcherTableau& tableau,
                        double t, const Vector& x, double h, const SolverSettings& settings);

/// Explicit RK step for a strictly lower-triangular tableau.
Vector explicit_rk_step(const VectorFieldProblem& problem, const ButcherTableau& tableau,
                        double t, const Vector& x, double h);

/// (x' - x)/h = f((x + x')/2), solved to settings.tolerance.
Vector implicit_midpoint_step(const VectorFieldProblem& problem, double t, const Vector& x,
                              double h, const SolverSettings& settings = {});

/// Gauss-Legendre collocation of s stages (order 2s); s = 1 is the midpoint rule.
Vector gauss_legendre_step(int s, const VectorFieldProblem& problem, double t,
                           const Vector& x, double h, const SolverSettings& settings = {});

Vector explicit_euler_step(const VectorFieldProblem& problem, double t, const Vector& x,
                           double h);
Vector rk4_step(const VectorFieldProblem& problem, double t, const Vector& x, double h);

/// Separable mechanical system: H = 1/2 p^T M^{-1} p + V(q).
struct PartitionedSystem {
  Matrix mass;  // symmetric positive definite
  std::function<double(const Vector& q)> potential;
  std::function<Vector(const Vector& q)> grad_potential;

  void validate() const;
  HamiltonianSystem as_hamiltonian() const;
};

/// Kick-drift-kick leapfrog; explicit, symplectic, order 2.
std::pair<Vector, Vector> stormer_verlet_step(const PartitionedSystem& system,
                                              const Vector& q, const Vector& p, double h);

/// Störmer-Verlet acting on packed states z = (p, q).
Vector stormer_verlet_step_z(const PartitionedSystem& system, const Vector& z, double h);

struct SymplecticityCheck {
  bool symplectic = false;
  double max_defect = 0.0;
  Matrix defect;  // b_i A_ij + b_j A_ji - b_i b_j
};

/// Algebraic symplecticity criterion for an RK tableau.
SymplecticityCheck rk_symplecticity_check(const ButcherTableau& tableau);

/// max-entry norm of DPhi^T J DPhi - J with DPhi from central differences
/// and J the canonical skew matrix on (p, q).
double symplecticity_defect(const StepMap& step, double t, const Vector& x, double h,
                            double delta);

}  // namespace geomint

#endif
