#include "geomint/exponential.hpp"

#include <cmath>
#include <random>

#include "geomint/integral_preserving.hpp"  // gauss_legendre_rule

namespace geomint {

Vector exponential_euler_step(const SemilinearProblem& problem, const Vector& y, double h) {
  const Matrix hA = h * problem.A;
  return expm<double>(hA) * y + h * (phi1(hA) * problem.b(y));
}

void SecondOrderProblem::finalize(unsigned seed) {
  if (Omega.rows() != n || Omega.cols() != n)
    throw ConfigError("SecondOrderProblem: Omega shape mismatch");
  if ((Omega - Omega.transpose()).lpNorm<Eigen::Infinity>() > 1e-12)
    throw ConfigError("SecondOrderProblem: Omega not symmetric");
  if (potential) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-0.5, 0.5);
    const double delta = 1e-6;
    for (int trial = 0; trial < 3; ++trial) {
      Vector y(n);
      for (int i = 0; i < n; ++i) y(i) = unif(rng);
      const Vector gv = g(y);
      for (int i = 0; i < n; ++i) {
        Vector yp = y, ym = y;
        yp(i) += delta;
        ym(i) -= delta;
        const double fd = -(potential(yp) - potential(ym)) / (2 * delta);
        if (std::abs(fd - gv(i)) > 1e-5 * std::max(1.0, std::abs(gv(i))))
          throw ConfigError("SecondOrderProblem: g disagrees with -grad U");
      }
    }
  }
  auto eig = std::make_shared<Eigen::SelfAdjointEigenSolver<Matrix>>(Omega);
  if (eig->info() != Eigen::Success)
    throw ConfigError("SecondOrderProblem: eigendecomposition failed");
  if (eig->eigenvalues().minCoeff() < -1e-10)
    throw ConfigError("SecondOrderProblem: Omega not positive semidefinite");
  omega_eig = std::move(eig);
}

Vector SecondOrderProblem::apply_function(const std::function<double(double)>& f,
                                          double scale, const Vector& v) const {
  if (!omega_eig) throw ConfigError("SecondOrderProblem: finalize() not called");
  const auto& U = omega_eig->eigenvectors();
  const auto& lam = omega_eig->eigenvalues();
  Vector w = U.transpose() * v;
  for (int i = 0; i < n; ++i) w(i) *= f(scale * lam(i));
  return U * w;
}

Matrix SecondOrderProblem::function_matrix(const std::function<double(double)>& f,
                                           double scale) const {
  if (!omega_eig) throw ConfigError("SecondOrderProblem: finalize() not called");
  const auto& U = omega_eig->eigenvectors();
  const auto& lam = omega_eig->eigenvalues();
  Vector d(n);
  for (int i = 0; i < n; ++i) d(i) = f(scale * lam(i));
  return U * d.asDiagonal() * U.transpose();
}

std::pair<Vector, Vector> trig_voc_step(const SecondOrderProblem& problem, const Vector& y,
                                        const Vector& v, double h, int quadrature_nodes) {
  auto cosf = [](double x) { return std::cos(x); };
  auto sinxf = [](double x) { return x * std::sin(x); };  // Omega sin(h Omega) = (1/h) * (x sin x)|_{x=h lambda}

  // free flight to the midpoint, where g is frozen
  const Vector y_mid = problem.apply_function(cosf, 0.5 * h, y) +
                       0.5 * h * problem.apply_function(sinc, 0.5 * h, v);
  const Vector gbar = problem.g(y_mid);

  const Vector yn_lin = problem.apply_function(cosf, h, y) +
                        h * problem.apply_function(sinc, h, v);
  // Omega sin(h Omega) y = (1/h) (hΩ) sin(hΩ) y
  const Vector vn_lin = (h == 0.0 ? Vector(Vector::Zero(problem.n))
                                  : Vector(-problem.apply_function(sinxf, h, y) / h)) +
                        problem.apply_function(cosf, h, v);

  // quadrature of the convolution kernels against the frozen g
  auto [nodes, weights] = gauss_legendre_rule(quadrature_nodes);
  Vector Iy = Vector::Zero(problem.n), Iv = Vector::Zero(problem.n);
  for (int k = 0; k < quadrature_nodes; ++k) {
    const double xi = h * nodes[k];
    const double w = h * weights[k];
    Iy += w * (h - xi) * problem.apply_function(sinc, h - xi, gbar);
    Iv += w * problem.apply_function(cosf, h - xi, gbar);
  }
  return {yn_lin + Iy, vn_lin + Iv};
}

void FilterFunction::validate() const {
  if (std::abs(scalar(0.0) - 1.0) > 1e-12)
    throw ConfigError("FilterFunction '" + name + "': Phi(0) != 1");
  for (int k = 1; k <= 3; ++k)
    if (std::abs(scalar(k * M_PI)) > 1e-12)
      throw ConfigError("FilterFunction '" + name + "': Phi(k pi) != 0");
}

std::vector<FilterFunction> builtin_filters() {
  FilterFunction s{"sinc", [](double x) { return sinc(x); }};
  FilterFunction s2{"sinc2", [](double x) { const double v = sinc(x); return v * v; }};
  s.validate();
  s2.validate();
  return {s, s2};
}

FilterFunction filter_by_name(const std::string& name) {
  if (name == "none") return FilterFunction{"none", [](double) { return 1.0; }};
  for (auto& f : builtin_filters())
    if (f.name == name) return f;
  throw ConfigError("unknown filter '" + name + "'");
}

Vector gautschi_step(const SecondOrderProblem& problem, const TrigStepperState& state,
                     double h, const FilterFunction& filter) {
  const Vector y_filtered = problem.apply_function(filter.scalar, h, state.y_curr);
  const Vector gn = problem.g(y_filtered);
  const Vector omega2y =
      problem.apply_function([](double x) { return x * x; }, 1.0, state.y_curr);
  const Vector forcing = problem.apply_function(gautschi_psi, h, gn - omega2y);
  return 2.0 * state.y_curr - state.y_prev + h * h * forcing;
}

Vector gautschi_velocity_estimate(const SecondOrderProblem& problem, const Vector& y_prev,
                                  const Vector& y_next, double h, bool sinc_corrected) {
  Vector v = (y_next - y_prev) / (2.0 * h);
  if (sinc_corrected)
    v = problem.apply_function(
        [](double x) {
          const double s = sinc(x);
          return std::abs(s) > 1e-8 ? 1.0 / s : 1.0;
        },
        h, v);
  return v;
}

}  // namespace geomint
