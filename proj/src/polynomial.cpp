#include "geomint/polynomial.hpp"

#include <cmath>
#include <numeric>

namespace geomint {

int Polynomial::degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_)
    deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
  return deg;
}

Polynomial Polynomial::constant(int nvars, double value) {
  Polynomial p(nvars);
  p.add_term(std::vector<int>(nvars, 0), value);
  return p;
}

Polynomial Polynomial::variable(int nvars, int index) {
  Polynomial p(nvars);
  std::vector<int> e(nvars, 0);
  e[index] = 1;
  p.add_term(e, 1.0);
  return p;
}

Polynomial& Polynomial::add_term(const std::vector<int>& exponents, double coeff) {
  if (static_cast<int>(exponents.size()) != nvars_)
    throw ConfigError("Polynomial: exponent tuple has wrong arity");
  terms_[exponents] += coeff;
  if (terms_[exponents] == 0.0) terms_.erase(exponents);
  return *this;
}

double Polynomial::eval(const Vector& x) const {
  if (x.size() != nvars_) throw ConfigError("Polynomial: eval dimension mismatch");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c;
    for (int v = 0; v < nvars_; ++v)
      for (int k = 0; k < e[v]; ++k) term *= x(v);
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    std::vector<int> en = e;
    en[var] -= 1;
    out.add_term(en, c * e[var]);
  }
  return out;
}

Polynomial Polynomial::antiderivative(int var) const {
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    std::vector<int> en = e;
    en[var] += 1;
    out.add_term(en, c / en[var]);
  }
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial out = *this;
  for (const auto& [e, c] : other.terms_) out.add_term(e, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  Polynomial out = *this;
  for (const auto& [e, c] : other.terms_) out.add_term(e, -c);
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  Polynomial out(nvars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : other.terms_) {
      std::vector<int> e(nvars_);
      for (int v = 0; v < nvars_; ++v) e[v] = ea[v] + eb[v];
      out.add_term(e, ca * cb);
    }
  return out;
}

Polynomial Polynomial::scaled(double factor) const {
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) out.add_term(e, c * factor);
  return out;
}

void Polynomial::prune() {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = (it->second == 0.0) ? terms_.erase(it) : std::next(it);
}

int PolynomialVectorField::degree() const {
  int deg = -1;
  for (const auto& p : components) deg = std::max(deg, p.degree());
  return deg;
}

Vector PolynomialVectorField::eval(const Vector& x) const {
  Vector out(dimension());
  for (int i = 0; i < dimension(); ++i) out(i) = components[i].eval(x);
  return out;
}

Polynomial PolynomialVectorField::divergence() const {
  Polynomial div(dimension());
  for (int i = 0; i < dimension(); ++i) div = div + components[i].derivative(i);
  return div;
}

VectorFieldProblem PolynomialVectorField::as_problem() const {
  const auto comps = components;
  const int d = dimension();
  VectorFieldProblem p;
  p.dimension = d;
  p.autonomous = true;
  p.polynomial_degree = degree();
  p.rhs = [comps, d](double, const Vector& x) {
    Vector out(d);
    for (int i = 0; i < d; ++i) out(i) = comps[i].eval(x);
    return out;
  };
  std::vector<std::vector<Polynomial>> jac(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) jac[i].push_back(comps[i].derivative(j));
  p.rhs_jacobian = [jac, d](double, const Vector& x) {
    Matrix J(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) J(i, j) = jac[i][j].eval(x);
    return J;
  };
  return p;
}

}  // namespace geomint
