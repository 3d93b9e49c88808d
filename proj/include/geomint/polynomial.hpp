#ifndef GEOMINT_POLYNOMIAL_HPP
#define GEOMINT_POLYNOMIAL_HPP

#include <map>

#include "geomint/problem.hpp"

namespace geomint {

/// Sparse multivariate polynomial: exponent tuple -> coefficient. Supports
/// the exact calculus the volume-preserving construction needs (partial
/// derivatives and antiderivatives are term-wise and exact).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int nvars) : nvars_(nvars) {}

  int nvars() const { return nvars_; }
  int degree() const;
  bool empty() const { return terms_.empty(); }

  static Polynomial constant(int nvars, double value);
  static Polynomial variable(int nvars, int index);

  Polynomial& add_term(const std::vector<int>& exponents, double coeff);

  double eval(const Vector& x) const;
  Polynomial derivative(int var) const;
  Polynomial antiderivative(int var) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial scaled(double factor) const;

  const std::map<std::vector<int>, double>& terms() const { return terms_; }

 private:
  int nvars_ = 0;
  std::map<std::vector<int>, double> terms_;
  void prune();
};

/// Vector field with polynomial components.
struct PolynomialVectorField {
  std::vector<Polynomial> components;

  int dimension() const { return static_cast<int>(components.size()); }
  int degree() const;
  Vector eval(const Vector& x) const;
  Polynomial divergence() const;
  VectorFieldProblem as_problem() const;
};

}  // namespace geomint

#endif
