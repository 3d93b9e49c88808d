#include "geomint/integral_preserving.hpp"

#include <cmath>
#include <random>

namespace geomint {

std::pair<std::vector<double>, std::vector<double>> gauss_legendre_rule(int q) {
  if (q < 1) throw ConfigError("gauss_legendre_rule: q must be positive");
  // Golub-Welsch on the Jacobi matrix of the Legendre recurrence
  Matrix J = Matrix::Zero(q, q);
  for (int k = 1; k < q; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = beta;
    J(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(J);
  std::vector<double> nodes(q), weights(q);
  for (int i = 0; i < q; ++i) {
    nodes[i] = 0.5 * (eig.eigenvalues()(i) + 1.0);  // map [-1,1] -> [0,1]
    const double v0 = eig.eigenvectors()(0, i);
    weights[i] = v0 * v0;  // total weight 1 on [0,1]
  }
  return {nodes, weights};
}

void FirstIntegralSystem::validate(unsigned seed) const {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const int d = field.dimension;
  for (int trial = 0; trial < 5; ++trial) {
    Vector x(d);
    for (int i = 0; i < d; ++i) x(i) = unif(rng);
    const Matrix S = skew(x);
    if ((S + S.transpose()).lpNorm<Eigen::Infinity>() > 1e-12)
      throw ConfigError("FirstIntegralSystem: S(x) not skew");
    const Vector f = field.rhs(0.0, x);
    const double err = (S * grad_integral(x) - f).lpNorm<Eigen::Infinity>();
    if (err > 1e-8 * std::max(1.0, f.lpNorm<Eigen::Infinity>()))
      throw ConfigError("FirstIntegralSystem: S grad I != f");
    if (skew_tensor) {
      const auto S3 = skew_tensor(x);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < d; ++k) {
            const double v = S3[i](j, k);
            if (std::abs(v + S3[j](i, k)) > 1e-12 || std::abs(v + S3[i](k, j)) > 1e-12)
              throw ConfigError("FirstIntegralSystem: S3 not fully antisymmetric");
          }
    }
  }
}

std::function<Matrix(const Vector&)> skew_from_field_and_gradient(
    std::function<Vector(const Vector&)> f, std::function<Vector(const Vector&)> grad_I) {
  return [f = std::move(f), grad_I = std::move(grad_I)](const Vector& x) -> Matrix {
    const Vector fv = f(x);
    const Vector g = grad_I(x);
    const double n2 = g.squaredNorm();
    if (n2 == 0.0)
      throw SolverError("skew_from_field_and_gradient: grad I vanishes", 0.0);
    return (fv * g.transpose() - g * fv.transpose()) / n2;
  };
}

Vector itoh_abe_gradient(const std::function<double(const Vector&)>& I, const Vector& x,
                         const Vector& xp,
                         const std::function<Vector(const Vector&)>& grad_I) {
  const Eigen::Index d = x.size();
  Vector g(d);
  Vector mixed = x;  // progressively replace coordinates by primed values
  for (Eigen::Index i = 0; i < d; ++i) {
    const double dx = xp(i) - x(i);
    Vector hi = mixed;
    hi(i) = xp(i);
    if (std::abs(dx) > 1e-12 * std::max(1.0, std::abs(x(i)))) {
      g(i) = (I(hi) - I(mixed)) / dx;
    } else if (grad_I) {
      g(i) = grad_I(mixed)(i);
    } else {
      const double delta = 1e-6 * std::max(1.0, std::abs(mixed(i)));
      Vector a = mixed, b = mixed;
      a(i) += delta;
      b(i) -= delta;
      g(i) = (I(a) - I(b)) / (2 * delta);
    }
    mixed = hi;
  }
  return g;
}

Vector avf_gradient(const std::function<Vector(const Vector&)>& grad_I, const Vector& x,
                    const Vector& xp, int quadrature) {
  auto [nodes, weights] = gauss_legendre_rule(quadrature);
  Vector g = Vector::Zero(x.size());
  for (int k = 0; k < quadrature; ++k)
    g += weights[k] * grad_I(nodes[k] * xp + (1.0 - nodes[k]) * x);
  return g;
}

Vector DiscreteGradient::eval(const std::function<double(const Vector&)>& I,
                              const std::function<Vector(const Vector&)>& grad_I,
                              const Vector& x, const Vector& xp) const {
  switch (kind) {
    case DiscreteGradientKind::itoh_abe:
      return itoh_abe_gradient(I, x, xp, grad_I);
    case DiscreteGradientKind::avf:
      return avf_gradient(grad_I, x, xp, quadrature);
  }
  throw ConfigError("DiscreteGradient: unknown kind");
}

Matrix SkewApproximation::eval(const FirstIntegralSystem& sys, const Vector& x,
                               const Vector& xp) const {
  switch (kind) {
    case SkewApproximationKind::left:
      return sys.skew(x);
    case SkewApproximationKind::midpoint:
      return sys.skew(0.5 * (x + xp));
  }
  throw ConfigError("SkewApproximation: unknown kind");
}

namespace {

int avf_auto_quadrature(const VectorFieldProblem& problem, int requested) {
  if (requested > 0) return requested;
  if (problem.polynomial_degree >= 0) {
    // exact for integrand degree <= 2q - 1
    return std::max(1, (problem.polynomial_degree + 2) / 2);
  }
  return 8;
}

}  // namespace

Vector avf_step(const VectorFieldProblem& problem, const Vector& x, double h,
                const SolverSettings& settings, int quadrature) {
  const int q = avf_auto_quadrature(problem, quadrature);
  auto [nodes, weights] = gauss_legendre_rule(q);
  auto map = [&](const Vector& xp) -> Vector {
    Vector avg = Vector::Zero(x.size());
    for (int k = 0; k < q; ++k)
      avg += weights[k] * problem.rhs(0.0, nodes[k] * xp + (1.0 - nodes[k]) * x);
    return x + h * avg;
  };
  return solve_implicit(map, x, settings);
}

double avf_quadrature_residual(const VectorFieldProblem& problem, const Vector& x,
                               const Vector& xp, int quadrature) {
  auto rhs_at = [&](int q) {
    auto [nodes, weights] = gauss_legendre_rule(q);
    Vector avg = Vector::Zero(x.size());
    for (int k = 0; k < q; ++k)
      avg += weights[k] * problem.rhs(0.0, nodes[k] * xp + (1.0 - nodes[k]) * x);
    return avg;
  };
  return (rhs_at(quadrature) - rhs_at(2 * quadrature)).lpNorm<Eigen::Infinity>();
}

Vector simpson_rk_step(const VectorFieldProblem& problem, const Vector& x, double h,
                       const SolverSettings& settings) {
  auto map = [&](const Vector& xp) -> Vector {
    return x + (h / 6.0) * (problem.rhs(0.0, x) + 4.0 * problem.rhs(0.0, 0.5 * (x + xp)) +
                            problem.rhs(0.0, xp));
  };
  return solve_implicit(map, x, settings);
}

Vector discrete_gradient_step(const FirstIntegralSystem& sys, const DiscreteGradient& grad,
                              const SkewApproximation& skew, const Vector& x, double h,
                              const SolverSettings& settings) {
  auto map = [&](const Vector& xp) -> Vector {
    const Vector gbar = grad.eval(sys.integral, sys.grad_integral, x, xp);
    return x + h * (skew.eval(sys, x, xp) * gbar);
  };
  return solve_implicit(map, x, settings);
}

Vector two_integral_step(const FirstIntegralSystem& sys, const Vector& x, double h,
                         const SolverSettings& settings, const DiscreteGradient& grad,
                         SkewApproximationKind skew_kind) {
  if (!sys.has_second_integral() || !sys.skew_tensor)
    throw ConfigError("two_integral_step: system lacks (J, S3)");
  const Eigen::Index d = x.size();
  auto map = [&](const Vector& xp) -> Vector {
    const Vector gI = grad.eval(sys.integral, sys.grad_integral, x, xp);
    const Vector gJ = grad.eval(sys.second_integral, sys.grad_second_integral, x, xp);
    const Vector mid = skew_kind == SkewApproximationKind::midpoint ? 0.5 * (x + xp) : x;
    const auto S3 = sys.skew_tensor(mid);
    Vector rhs(d);
    for (Eigen::Index i = 0; i < d; ++i) rhs(i) = gI.dot(S3[i] * gJ);
    return x + h * rhs;
  };
  return solve_implicit(map, x, settings);
}

}  // namespace geomint
