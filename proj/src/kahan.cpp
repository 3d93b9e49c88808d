#include "geomint/kahan.hpp"

#include <cmath>
#include <random>

namespace geomint {

Vector QuadraticVectorField::eval(const Vector& x) const {
  const int d = dimension();
  Vector out = linear * x + constant;
  for (int i = 0; i < d; ++i) out(i) += x.dot(quadratic[i] * x);
  return out;
}

Matrix QuadraticVectorField::abar(const Vector& x) const {
  const int d = dimension();
  Matrix A(d, d);
  for (int i = 0; i < d; ++i) A.row(i) = (quadratic[i] * x).transpose();
  return A;
}

Matrix QuadraticVectorField::jacobian(const Vector& x) const {
  return 2.0 * abar(x) + linear;
}

VectorFieldProblem QuadraticVectorField::as_problem() const {
  auto self = *this;
  VectorFieldProblem p;
  p.dimension = dimension();
  p.autonomous = true;
  p.polynomial_degree = 2;
  p.rhs = [self](double, const Vector& x) { return self.eval(x); };
  p.rhs_jacobian = [self](double, const Vector& x) { return self.jacobian(x); };
  return p;
}

void QuadraticVectorField::validate(const std::function<Vector(const Vector&)>& closed_form,
                                    unsigned seed) const {
  const int d = dimension();
  if (static_cast<int>(quadratic.size()) != d || linear.rows() != d || linear.cols() != d)
    throw ConfigError("QuadraticVectorField: inconsistent shapes");
  for (const auto& A : quadratic)
    if ((A - A.transpose()).lpNorm<Eigen::Infinity>() != 0.0)
      throw ConfigError("QuadraticVectorField: a_ijk not symmetric in (j,k)");
  if (closed_form) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
      Vector x(d);
      for (int i = 0; i < d; ++i) x(i) = unif(rng);
      const Vector lhs = eval(x), rhs = closed_form(x);
      if ((lhs - rhs).lpNorm<Eigen::Infinity>() >
          1e-12 * std::max(1.0, rhs.lpNorm<Eigen::Infinity>()))
        throw ConfigError("QuadraticVectorField: tensors disagree with closed form");
    }
  }
}

Matrix field_jacobian(const QuadraticVectorField& field, const Vector& x) {
  return field.jacobian(x);
}

Vector kahan_step(const QuadraticVectorField& field, const Vector& x, double h) {
  const int d = field.dimension();
  const Matrix M =
      Matrix::Identity(d, d) - h * field.abar(x) - 0.5 * h * field.linear;
  Eigen::FullPivLU<Matrix> lu(M);
  if (!lu.isInvertible())
    throw SolverError("kahan_step: I - h abar(x) - h/2 B is singular; reduce h", 0.0);
  return lu.solve(x + 0.5 * h * (field.linear * x) + h * field.constant);
}

Vector kahan_rk_form_step(const QuadraticVectorField& field, const Vector& x, double h,
                          const SolverSettings& settings) {
  auto map = [&](const Vector& xp) -> Vector {
    return x + h * (2.0 * field.eval(0.5 * (x + xp)) - 0.5 * field.eval(x) -
                    0.5 * field.eval(xp));
  };
  return solve_implicit(map, x, settings);
}

void CubicHamiltonianStructure::validate(const QuadraticVectorField& field,
                                         unsigned seed) const {
  if ((S + S.transpose()).lpNorm<Eigen::Infinity>() > 1e-12)
    throw ConfigError("CubicHamiltonianStructure: S not skew");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const int d = field.dimension();
  for (int trial = 0; trial < 5; ++trial) {
    Vector x(d);
    for (int i = 0; i < d; ++i) x(i) = unif(rng);
    const Vector f = field.eval(x);
    if ((S * grad_H(x) - f).lpNorm<Eigen::Infinity>() >
        1e-10 * std::max(1.0, f.lpNorm<Eigen::Infinity>()))
      throw ConfigError("CubicHamiltonianStructure: S grad H != f");
  }
}

double modified_energy_value(double H_at_x, const Vector& grad_H_at_x,
                             const QuadraticVectorField& field, const Vector& x, double h) {
  const int d = field.dimension();
  const Matrix M = Matrix::Identity(d, d) - 0.5 * h * field.jacobian(x);
  Eigen::FullPivLU<Matrix> lu(M);
  if (!lu.isInvertible())
    throw SolverError("modified_energy: I - h/2 f'(x) is singular", 0.0);
  return H_at_x + (h / 3.0) * grad_H_at_x.dot(lu.solve(field.eval(x)));
}

double modified_energy(const CubicHamiltonianStructure& structure,
                       const QuadraticVectorField& field, const Vector& x, double h) {
  return modified_energy_value(structure.H(x), structure.grad_H(x), field, x, h);
}

double modified_measure_weight(const QuadraticVectorField& field, const Vector& x,
                               double h) {
  const int d = field.dimension();
  const Matrix M = Matrix::Identity(d, d) - 0.5 * h * field.jacobian(x);
  const double det = M.determinant();
  if (det == 0.0)
    throw SolverError("modified_measure_weight: singular I - h/2 f'(x)", 0.0);
  return 1.0 / det;
}

}  // namespace geomint
