#include "geomint/volume.hpp"

#include <cmath>
#include <random>

#include "geomint/symplectic.hpp"

namespace geomint {

Vector DivergenceFree3D::eval(const Vector& x) const {
  Vector out(3);
  out << u(x(0), x(1), x(2)), v(x(0), x(1), x(2)), w(x(0), x(1), x(2));
  return out;
}

VectorFieldProblem DivergenceFree3D::as_problem() const {
  VectorFieldProblem p;
  p.dimension = 3;
  p.autonomous = true;
  auto self = *this;
  p.rhs = [self](double, const Vector& x) { return self.eval(x); };
  return p;
}

void DivergenceFree3D::validate(unsigned seed) const {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const double d = 1e-5;
  for (int trial = 0; trial < 5; ++trial) {
    const double x = unif(rng), y = unif(rng), z = unif(rng);
    const double div = (u(x + d, y, z) - u(x - d, y, z)) / (2 * d) +
                       (v(x, y + d, z) - v(x, y - d, z)) / (2 * d) +
                       (w(x, y, z + d) - w(x, y, z - d)) / (2 * d);
    double scale = std::max({1.0, std::abs(u(x, y, z)), std::abs(v(x, y, z)),
                             std::abs(w(x, y, z))});
    if (std::abs(div) > 1e-8 * scale)
      throw ConfigError("DivergenceFree3D: field has nonzero divergence");
    const double dPdy = (P(x, y + d, z) - P(x, y - d, z)) / (2 * d);
    if (std::abs(dPdy - u_x(x, y, z)) > 1e-6 * std::max(1.0, std::abs(u_x(x, y, z))))
      throw ConfigError("DivergenceFree3D: dP/dy != u_x");
  }
}

DivergenceFree3D divergence_free_from_polynomial(const PolynomialVectorField& field) {
  if (field.dimension() != 3)
    throw ConfigError("divergence_free_from_polynomial: need a 3D field");
  if (field.divergence().degree() >= 0)
    throw ConfigError("divergence_free_from_polynomial: field is not divergence-free");
  const Polynomial pu = field.components[0];
  const Polynomial pv = field.components[1];
  const Polynomial pw = field.components[2];
  const Polynomial pux = pu.derivative(0);
  const Polynomial pP = pux.antiderivative(1);  // int u_x dy, constant 0

  auto wrap = [](const Polynomial& p) {
    return [p](double x, double y, double z) {
      Vector v3(3);
      v3 << x, y, z;
      return p.eval(v3);
    };
  };
  DivergenceFree3D out;
  out.u = wrap(pu);
  out.v = wrap(pv);
  out.w = wrap(pw);
  out.u_x = wrap(pux);
  out.P = wrap(pP);
  return out;
}

PolynomialVectorField vp_example_field() {
  PolynomialVectorField f;
  Polynomial f1(3), f2(3), f3(3);
  f1.add_term({0, 1, 0}, 1.0).add_term({2, 0, 0}, 1.0).add_term({0, 0, 3}, 1.0);
  f2.add_term({0, 0, 1}, 1.0).add_term({1, 1, 0}, 1.0).add_term({4, 0, 0}, 1.0);
  f3.add_term({1, 0, 0}, 1.0).add_term({1, 0, 1}, -3.0).add_term({0, 5, 0}, 1.0);
  f.components = {f1, f2, f3};
  return f;
}

std::pair<VectorFieldProblem, VectorFieldProblem> vp_split(const DivergenceFree3D& field) {
  auto u = field.u, v = field.v, w = field.w, P = field.P;
  VectorFieldProblem a, b;
  a.dimension = b.dimension = 3;
  a.rhs = [u, P](double, const Vector& x) {
    Vector out(3);
    out << u(x(0), x(1), x(2)), -P(x(0), x(1), x(2)), 0.0;
    return out;
  };
  b.rhs = [v, w, P](double, const Vector& x) {
    Vector out(3);
    out << 0.0, v(x(0), x(1), x(2)) + P(x(0), x(1), x(2)), w(x(0), x(1), x(2));
    return out;
  };
  return {a, b};
}

Vector vp_splitting_step(const DivergenceFree3D& field, const Vector& x, double h,
                         const SolverSettings& settings) {
  auto [a, b] = vp_split(field);
  Vector y = implicit_midpoint_step(a, 0.0, x, 0.5 * h, settings);
  y = implicit_midpoint_step(b, 0.0, y, h, settings);
  return implicit_midpoint_step(a, 0.0, y, 0.5 * h, settings);
}

std::vector<PolynomialVectorField> vp_split_nd(const PolynomialVectorField& field) {
  const int n = field.dimension();
  if (n < 2) throw ConfigError("vp_split_nd: dimension must be >= 2");
  if (field.divergence().degree() >= 0)
    throw ConfigError("vp_split_nd: field is not divergence-free");
  std::vector<PolynomialVectorField> parts;
  Polynomial carried(n);  // v_{k-1}: what part k-1 assigned to coordinate k
  for (int k = 0; k < n - 1; ++k) {
    PolynomialVectorField part;
    part.components.assign(n, Polynomial(n));
    const Polynomial uk = field.components[k] - carried;
    part.components[k] = uk;
    if (k == n - 2) {
      part.components[k + 1] = field.components[k + 1];
    } else {
      const Polynomial vk = uk.derivative(k).antiderivative(k + 1).scaled(-1.0);
      part.components[k + 1] = vk;
      carried = vk;
    }
    parts.push_back(std::move(part));
  }
  return parts;
}

Vector vp_splitting_step_nd(const PolynomialVectorField& field, const Vector& x, double h,
                            const SolverSettings& settings) {
  const auto parts = vp_split_nd(field);
  std::vector<VectorFieldProblem> probs;
  probs.reserve(parts.size());
  for (const auto& p : parts) probs.push_back(p.as_problem());
  Vector y = x;
  // palindromic sweep: half steps up, full step on the last part, half steps down
  for (std::size_t k = 0; k + 1 < probs.size(); ++k)
    y = implicit_midpoint_step(probs[k], 0.0, y, 0.5 * h, settings);
  y = implicit_midpoint_step(probs.back(), 0.0, y, h, settings);
  for (std::size_t k = probs.size() - 1; k-- > 0;)
    y = implicit_midpoint_step(probs[k], 0.0, y, 0.5 * h, settings);
  return y;
}

Vector TriangularVPMap::step(const Vector& x, double tolerance) const {
  const double x1 = x(0), x2 = x(1), x3 = x(2);
  const double x1p =
      solve_scalar([&](double z) { return g1(z, x2, x3) - x1; }, x1, tolerance);
  const double x2p = g2(x1p, x2, x3);
  const double x3p = g3(x1p, x2p, x3);
  Vector out(3);
  out << x1p, x2p, x3p;
  return out;
}

TriangularVPMap shang_quispel_example_map(double h) {
  TriangularVPMap m;
  m.h = h;
  m.g1 = [h](double x1p, double x2, double x3) {
    return x1p - h * (x2 + x1p * x1p + x3 * x3 * x3) - h * h * x1p * x1p * x1p;
  };
  m.g2 = [h](double x1p, double x2, double x3) {
    return x2 + h * (x3 + x1p * x2 + x1p * x1p * x1p * x1p);
  };
  m.g3 = [h](double x1p, double x2p, double x3) {
    return x3 + h * (x1p - 3.0 * x1p * x3 + std::pow(x2p, 5));
  };
  return m;
}

Vector shang_quispel_example_step(const Vector& x, double h, double tolerance) {
  return shang_quispel_example_map(h).step(x, tolerance);
}

double triangular_vp_condition_defect(const TriangularVPMap& map, const Vector& x,
                                      double delta) {
  const Vector xp = map.step(x);
  const double x1p = xp(0), x2p = xp(1);
  const double x2 = x(1), x3 = x(2);
  const double dx1_dx1p =
      (map.g1(x1p + delta, x2, x3) - map.g1(x1p - delta, x2, x3)) / (2 * delta);
  const double dx2p_dx2 =
      (map.g2(x1p, x2 + delta, x3) - map.g2(x1p, x2 - delta, x3)) / (2 * delta);
  const double dx3p_dx3 =
      (map.g3(x1p, x2p, x3 + delta) - map.g3(x1p, x2p, x3 - delta)) / (2 * delta);
  return std::abs(dx1_dx1p - dx2p_dx2 * dx3p_dx3);
}

double volume_defect(const StepMap& step, double t, const Vector& x, double h, double delta) {
  const Matrix J = fd_jacobian([&](const Vector& y) { return step(t, y, h); }, x, delta);
  return std::abs(std::abs(J.determinant()) - 1.0);
}

}  // namespace geomint
