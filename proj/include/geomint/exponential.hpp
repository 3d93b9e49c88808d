#ifndef GEOMINT_EXPONENTIAL_HPP
#define GEOMINT_EXPONENTIAL_HPP

#include <memory>

#include "geomint/core.hpp"
#include "geomint/matrix_functions.hpp"

namespace geomint {

/// ydot = A y + b(y) with stiffness carried by A.
struct SemilinearProblem {
  Matrix A;
  std::function<Vector(const Vector&)> b;
};

/// y' = e^{hA} y + h phi1(hA) b(y); exact whenever b is constant.
Vector exponential_euler_step(const SemilinearProblem& problem, const Vector& y, double h);

/// yddot + Omega^2 y = g(y) with symmetric positive semidefinite Omega.
/// Matrix functions of Omega go through one eigendecomposition, computed by
/// finalize() and shared immutably afterwards.
struct SecondOrderProblem {
  int n = 0;
  Matrix Omega;
  std::function<Vector(const Vector&)> g;
  std::function<double(const Vector&)> potential;  // optional, g = -grad U

  std::shared_ptr<const Eigen::SelfAdjointEigenSolver<Matrix>> omega_eig;

  /// Validate (Omega symmetric; g vs -grad U when U given) and decompose.
  void finalize(unsigned seed = 0x5eed);

  /// f(scale * Omega) v through the eigendecomposition.
  Vector apply_function(const std::function<double(double)>& f, double scale,
                        const Vector& v) const;
  Matrix function_matrix(const std::function<double(double)>& f, double scale) const;
};

/// One step of the exact-oscillation variation-of-constants scheme for
/// (y, ydot): exact linear propagation plus a q-node Gauss-Legendre
/// quadrature of the forcing convolution with g frozen at the free-flight
/// midpoint (order 2).
std::pair<Vector, Vector> trig_voc_step(const SecondOrderProblem& problem, const Vector& y,
                                        const Vector& v, double h, int quadrature_nodes = 4);

/// Resonance filter: Phi(0) = 1, Phi(k pi) = 0 for k = 1, 2, 3.
struct FilterFunction {
  std::string name;
  std::function<double(double)> scalar;

  void validate() const;
};

/// sinc and sinc^2.
std::vector<FilterFunction> builtin_filters();
FilterFunction filter_by_name(const std::string& name);  // also "none"

/// Two back values of the two-step scheme.
struct TrigStepperState {
  Vector y_prev;
  Vector y_curr;
};

/// y_{n+1} = 2 y_n - y_{n-1} + h^2 Psi(h Omega)(g(Phi(h Omega) y_n) - Omega^2 y_n)
/// with Psi(x) = 2(1 - cos x)/x^2.
Vector gautschi_step(const SecondOrderProblem& problem, const TrigStepperState& state,
                     double h, const FilterFunction& filter);

/// Central-difference velocity (y_next - y_prev)/(2h), optionally corrected
/// by [sinc(h Omega)]^{-1} which makes it exact for the linear part away
/// from resonance.
Vector gautschi_velocity_estimate(const SecondOrderProblem& problem, const Vector& y_prev,
                                  const Vector& y_next, double h, bool sinc_corrected);

}  // namespace geomint

#endif
