#include "geomint/problems.hpp"

#include <cmath>

namespace geomint {

HamiltonianSystem harmonic_oscillator() {
  HamiltonianSystem h;
  h.dof = 1;
  h.energy = [](const Vector& p, const Vector& q) {
    return 0.5 * (p.squaredNorm() + q.squaredNorm());
  };
  h.dH_dp = [](const Vector& p, const Vector&) -> Vector { return p; };
  h.dH_dq = [](const Vector&, const Vector& q) -> Vector { return q; };
  h.validate();
  return h;
}

PartitionedSystem harmonic_partitioned() {
  PartitionedSystem s;
  s.mass = Matrix::Identity(1, 1);
  s.potential = [](const Vector& q) { return 0.5 * q.squaredNorm(); };
  s.grad_potential = [](const Vector& q) -> Vector { return q; };
  s.validate();
  return s;
}

HamiltonianSystem pendulum() {
  HamiltonianSystem h;
  h.dof = 1;
  h.energy = [](const Vector& p, const Vector& q) {
    return 0.5 * p.squaredNorm() - std::cos(q(0));
  };
  h.dH_dp = [](const Vector& p, const Vector&) -> Vector { return p; };
  h.dH_dq = [](const Vector&, const Vector& q) -> Vector {
    Vector g(1);
    g << std::sin(q(0));
    return g;
  };
  h.validate();
  return h;
}

PartitionedSystem pendulum_partitioned() {
  PartitionedSystem s;
  s.mass = Matrix::Identity(1, 1);
  s.potential = [](const Vector& q) { return -std::cos(q(0)); };
  s.grad_potential = [](const Vector& q) -> Vector {
    Vector g(1);
    g << std::sin(q(0));
    return g;
  };
  s.validate();
  return s;
}

KeplerProblem kepler(double eccentricity) {
  if (!(eccentricity >= 0.0 && eccentricity < 1.0))
    throw ConfigError("kepler: eccentricity must lie in [0, 1)");
  KeplerProblem k;
  k.hamiltonian.dof = 2;
  k.hamiltonian.energy = [](const Vector& p, const Vector& q) {
    return 0.5 * p.squaredNorm() - 1.0 / q.norm();
  };
  k.hamiltonian.dH_dp = [](const Vector& p, const Vector&) -> Vector { return p; };
  k.hamiltonian.dH_dq = [](const Vector&, const Vector& q) -> Vector {
    return q / std::pow(q.norm(), 3);
  };
  k.hamiltonian.validate();

  k.partitioned.mass = Matrix::Identity(2, 2);
  k.partitioned.potential = [](const Vector& q) { return -1.0 / q.norm(); };
  k.partitioned.grad_potential = [](const Vector& q) -> Vector {
    return q / std::pow(q.norm(), 3);
  };

  k.initial_state.resize(4);
  const double v = std::sqrt((1.0 + eccentricity) / (1.0 - eccentricity));
  k.initial_state << 0.0, v, 1.0 - eccentricity, 0.0;  // (p1, p2, q1, q2)
  return k;
}

double kepler_angular_momentum(const Vector& z) {
  return z(2) * z(1) - z(3) * z(0);  // q1 p2 - q2 p1
}

NBodyConfig default_three_body() {
  NBodyConfig c;
  c.masses = {1.0, 1.0e-3, 1.0e-4};
  Vector q0(2), q1(2), q2(2);
  q0 << 0.0, 0.0;
  q1 << 1.0, 0.0;
  q2 << 1.52, 0.0;
  Vector p1(2), p2(2);
  p1 << 0.0, 1.0e-3 * std::sqrt(1.0);
  p2 << 0.0, 1.0e-4 * std::sqrt(1.0 / 1.52);
  Vector p0 = -(p1 + p2);  // zero total momentum
  c.positions = {q0, q1, q2};
  c.momenta = {p0, p1, p2};
  return c;
}

NBodyProblem nbody(const NBodyConfig& config) {
  const int n = static_cast<int>(config.masses.size());
  if (n < 2 || config.positions.size() != static_cast<std::size_t>(n) ||
      config.momenta.size() != static_cast<std::size_t>(n))
    throw ConfigError("nbody: inconsistent configuration");
  NBodyProblem prob;
  prob.bodies = n;
  prob.config = config;

  const auto masses = config.masses;
  const double G = config.G;
  prob.hamiltonian.dof = 2 * n;
  prob.hamiltonian.energy = [masses, G, n](const Vector& p, const Vector& q) {
    double E = 0.0;
    for (int i = 0; i < n; ++i) E += p.segment(2 * i, 2).squaredNorm() / (2.0 * masses[i]);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        E -= G * masses[i] * masses[j] /
             (q.segment(2 * i, 2) - q.segment(2 * j, 2)).norm();
    return E;
  };
  prob.hamiltonian.dH_dp = [masses, n](const Vector& p, const Vector&) -> Vector {
    Vector out(2 * n);
    for (int i = 0; i < n; ++i) out.segment(2 * i, 2) = p.segment(2 * i, 2) / masses[i];
    return out;
  };
  prob.hamiltonian.dH_dq = [masses, G, n](const Vector&, const Vector& q) -> Vector {
    Vector out = Vector::Zero(2 * n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const Vector dq = q.segment(2 * i, 2) - q.segment(2 * j, 2);
        const Vector pull = G * masses[i] * masses[j] * dq / std::pow(dq.norm(), 3);
        out.segment(2 * i, 2) += pull;
        out.segment(2 * j, 2) -= pull;
      }
    return out;
  };
  prob.hamiltonian.validate();

  Matrix M = Matrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) M.block(2 * i, 2 * i, 2, 2) = masses[i] * Matrix::Identity(2, 2);
  prob.partitioned.mass = M;
  prob.partitioned.potential = [ham = prob.hamiltonian, n](const Vector& q) {
    return ham.energy(Vector::Zero(2 * n), q);
  };
  auto dq = prob.hamiltonian.dH_dq;
  prob.partitioned.grad_potential = [dq, n](const Vector& q) -> Vector {
    return dq(Vector::Zero(2 * n), q);
  };

  prob.initial_state.resize(4 * n);
  for (int i = 0; i < n; ++i) {
    prob.initial_state.segment(2 * i, 2) = config.momenta[i];
    prob.initial_state.segment(2 * n + 2 * i, 2) = config.positions[i];
  }
  return prob;
}

Vector nbody_linear_momentum(const NBodyProblem& problem, const Vector& z) {
  Vector total = Vector::Zero(2);
  for (int i = 0; i < problem.bodies; ++i) total += z.segment(2 * i, 2);
  return total;
}

double nbody_angular_momentum(const NBodyProblem& problem, const Vector& z) {
  const int n = problem.bodies;
  double L = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto p = z.segment(2 * i, 2);
    const auto q = z.segment(2 * n + 2 * i, 2);
    L += q(0) * p(1) - q(1) * p(0);
  }
  return L;
}

int OscillatoryHamiltonian::dimension() const {
  int d = n_slow;
  for (const auto& [size, omega] : fast_blocks) d += size;
  return d;
}

Vector OscillatoryHamiltonian::omega_diagonal() const {
  Vector d = Vector::Zero(dimension());
  int at = n_slow;
  for (const auto& [size, omega] : fast_blocks) {
    d.segment(at, size).setConstant(omega);
    at += size;
  }
  return d;
}

SecondOrderProblem OscillatoryHamiltonian::as_second_order() const {
  SecondOrderProblem p;
  p.n = dimension();
  p.Omega = omega_diagonal().asDiagonal();
  auto g = grad_U;
  p.g = [g](const Vector& q) -> Vector { return -g(q); };
  p.potential = U;
  p.finalize();
  return p;
}

PartitionedSystem OscillatoryHamiltonian::as_partitioned() const {
  PartitionedSystem s;
  const int d = dimension();
  s.mass = Matrix::Identity(d, d);
  const Vector om = omega_diagonal();
  auto Ufn = U;
  auto gfn = grad_U;
  s.potential = [om, Ufn](const Vector& q) {
    return 0.5 * (om.array() * q.array()).matrix().squaredNorm() + Ufn(q);
  };
  s.grad_potential = [om, gfn](const Vector& q) -> Vector {
    return (om.array().square() * q.array()).matrix() + gfn(q);
  };
  return s;
}

double total_energy(const OscillatoryHamiltonian& osc, const Vector& p, const Vector& q) {
  const Vector om = osc.omega_diagonal();
  return 0.5 * p.squaredNorm() + 0.5 * (om.array() * q.array()).matrix().squaredNorm() +
         osc.U(q);
}

double oscillatory_energy(const OscillatoryHamiltonian& osc, const Vector& p,
                          const Vector& q) {
  double I = 0.0;
  int at = osc.n_slow;
  for (const auto& [size, omega] : osc.fast_blocks) {
    I += 0.5 * p.segment(at, size).squaredNorm() +
         0.5 * omega * omega * q.segment(at, size).squaredNorm();
    at += size;
  }
  return I;
}

bool nonresonance_ok(double h, double omega, int N, double c) {
  if (N < 2 || !(c > 0)) throw ConfigError("nonresonance_ok: need N >= 2 and c > 0");
  for (int m = 1; m <= N; ++m)
    if (std::abs(std::sin(0.5 * m * h * omega)) < c * std::sqrt(h)) return false;
  return true;
}

OscillatoryHamiltonian fpu_system(int n_pairs, double omega) {
  if (n_pairs < 1 || !(omega >= 1.0)) throw ConfigError("fpu_system: need n_pairs >= 1, omega >= 1");
  OscillatoryHamiltonian osc;
  const int m = n_pairs;
  osc.n_slow = m;
  osc.fast_blocks = {{m, omega}};
  osc.U = [m](const Vector& q) {
    const auto x0 = q.head(m), x1 = q.tail(m);
    double s = std::pow(x0(0) - x1(0), 4) + std::pow(x0(m - 1) + x1(m - 1), 4);
    for (int i = 0; i + 1 < m; ++i)
      s += std::pow(x0(i + 1) - x1(i + 1) - x0(i) - x1(i), 4);
    return 0.25 * s;
  };
  osc.grad_U = [m](const Vector& q) -> Vector {
    const auto x0 = q.head(m), x1 = q.tail(m);
    Vector g0 = Vector::Zero(m), g1 = Vector::Zero(m);
    const double a = std::pow(x0(0) - x1(0), 3);
    g0(0) += a;
    g1(0) -= a;
    for (int i = 0; i + 1 < m; ++i) {
      const double b = std::pow(x0(i + 1) - x1(i + 1) - x0(i) - x1(i), 3);
      g0(i + 1) += b;
      g1(i + 1) -= b;
      g0(i) -= b;
      g1(i) -= b;
    }
    const double cterm = std::pow(x0(m - 1) + x1(m - 1), 3);
    g0(m - 1) += cterm;
    g1(m - 1) += cterm;
    Vector g(2 * m);
    g << g0, g1;
    return g;
  };
  // classic energy-exchange configuration: first slow and first fast mode excited
  Vector p = Vector::Zero(2 * m), q = Vector::Zero(2 * m);
  q(0) = 1.0;
  p(0) = 1.0;
  q(m) = 1.0 / omega;
  p(m) = 1.0;
  osc.default_state.resize(4 * m);
  osc.default_state << p, q;
  return osc;
}

namespace {

double param(const std::map<std::string, double>& params, const std::string& key,
             double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

Matrix skew2() {
  Matrix S(2, 2);
  S << 0.0, 1.0, -1.0, 0.0;
  return S;
}

KahanFamily quadratic_hamiltonian_2d(const std::map<std::string, double>& params) {
  const double a = param(params, "a", 0.3), b = param(params, "b", -0.2);
  const double c = param(params, "c", 0.5), d = param(params, "d", 0.1);
  const double e = param(params, "e", 0.4), f = param(params, "f", -0.3);
  const double g = param(params, "g", 0.2), hh = param(params, "h", 0.1);
  const double i = param(params, "i", -0.25);

  KahanFamily fam;
  fam.name = "quadratic-hamiltonian-2d";
  Matrix A1(2, 2), A2(2, 2), B(2, 2);
  A1 << b, c, c, d;
  A2 << -a, -b, -b, -c;
  B << f, g, -e, -f;
  Vector cv(2);
  cv << i, -hh;
  fam.field.quadratic = {A1, A2};
  fam.field.linear = B;
  fam.field.constant = cv;
  fam.field.validate();

  fam.invariant = [=](const Vector& z) {
    const double x = z(0), y = z(1);
    return (a / 3) * x * x * x + b * x * x * y + c * x * y * y + (d / 3) * y * y * y +
           (e / 2) * x * x + f * x * y + (g / 2) * y * y + hh * x + i * y;
  };
  fam.invariant_grad = [=](const Vector& z) -> Vector {
    const double x = z(0), y = z(1);
    Vector out(2);
    out << a * x * x + 2 * b * x * y + c * y * y + e * x + f * y + hh,
        b * x * x + 2 * c * x * y + d * y * y + f * x + g * y + i;
    return out;
  };
  CubicHamiltonianStructure structure;
  structure.S = skew2();
  structure.H = fam.invariant;
  structure.grad_H = fam.invariant_grad;
  structure.validate(fam.field);
  fam.structure = structure;
  // trajectory that keeps det(I - h abar(x) - h/2 B) away from zero
  fam.default_state.resize(2);
  fam.default_state << 0.2, 0.1;
  return fam;
}

KahanFamily suslov_2d(const std::map<std::string, double>& params) {
  const double la = param(params, "la", 0.2), lb = param(params, "lb", -0.1);
  const double lc = param(params, "lc", 1.0);
  const double d = param(params, "d", 0.5), e = param(params, "e", 0.2);
  const double f = param(params, "f", 0.4), g = param(params, "g", 0.1);
  const double hh = param(params, "h", -0.2), i = param(params, "i", 0.3);

  KahanFamily fam;
  fam.name = "suslov-2d";
  // u = (la x + lb y + lc)(e x + 2 f y + h), v = -(la x + lb y + lc)(2 d x + e y + g)
  Matrix A1(2, 2), A2(2, 2), B(2, 2);
  A1 << la * e, 0.5 * (2 * la * f + lb * e), 0.5 * (2 * la * f + lb * e), 2 * lb * f;
  A2 << -2 * la * d, -0.5 * (la * e + 2 * lb * d), -0.5 * (la * e + 2 * lb * d), -lb * e;
  B << la * hh + lc * e, lb * hh + 2 * lc * f, -(la * g + 2 * lc * d), -(lb * g + lc * e);
  Vector cv(2);
  cv << lc * hh, -lc * g;
  fam.field.quadratic = {A1, A2};
  fam.field.linear = B;
  fam.field.constant = cv;
  fam.field.validate([=](const Vector& z) -> Vector {
    const double x = z(0), y = z(1);
    const double l = la * x + lb * y + lc;
    Vector out(2);
    out << l * (e * x + 2 * f * y + hh), -l * (2 * d * x + e * y + g);
    return out;
  });

  fam.invariant = [=](const Vector& z) {
    const double x = z(0), y = z(1);
    return d * x * x + e * x * y + f * y * y + g * x + hh * y + i;
  };
  fam.invariant_grad = [=](const Vector& z) -> Vector {
    const double x = z(0), y = z(1);
    Vector out(2);
    out << 2 * d * x + e * y + g, e * x + 2 * f * y + hh;
    return out;
  };
  fam.default_state.resize(2);
  fam.default_state << 0.3, 0.4;
  return fam;
}

KahanFamily nahm_octahedral() {
  KahanFamily fam;
  fam.name = "nahm-octahedral";
  Matrix A1 = Matrix::Zero(2, 2), A2 = Matrix::Zero(2, 2);
  A1(0, 0) = 2.0;
  A1(1, 1) = -12.0;
  A2(0, 0) = -6.0;
  A2(1, 1) = -4.0;
  fam.field.quadratic = {A1, A2};
  fam.field.linear = Matrix::Zero(2, 2);
  fam.field.constant = Vector::Zero(2);
  fam.field.validate([](const Vector& z) -> Vector {
    const double x = z(0), y = z(1);
    Vector out(2);
    out << 2 * x * x - 12 * y * y, -6 * x * x - 4 * y * y;
    return out;
  });

  // Transcendental first integral built from the Darboux polynomials x - y
  // and x^2 + 4xy/3 + 2y^2 (the flow has no rational invariant).
  const double c14 = 12.0 / std::sqrt(14.0);
  fam.invariant = [c14](const Vector& z) {
    const double x = z(0), y = z(1);
    const double q = x * x + 4.0 * x * y / 3.0 + 2.0 * y * y;
    return 5.0 * std::log(std::abs(x - y)) + 4.0 * std::log(q) -
           c14 * std::atan2(-std::sqrt(14.0) * y / 3.0, x + 2.0 * y / 3.0);
  };
  fam.invariant_grad = [](const Vector& z) -> Vector {
    const double x = z(0), y = z(1);
    const double q = x * x + 4.0 * x * y / 3.0 + 2.0 * y * y;
    Vector out(2);
    out << 5.0 / (x - y) + (8.0 * x + 4.0 * y / 3.0) / q,
        -5.0 / (x - y) + (28.0 * x / 3.0 + 16.0 * y) / q;
    return out;
  };
  fam.default_state.resize(2);
  fam.default_state << 0.5, 0.2;
  return fam;
}

KahanFamily nahm_icosahedral() {
  KahanFamily fam;
  fam.name = "nahm-icosahedral";
  Matrix A1 = Matrix::Zero(2, 2), A2 = Matrix::Zero(2, 2);
  A1(0, 0) = 2.0;
  A1(1, 1) = -1.0;
  A2(0, 1) = -5.0;
  A2(1, 0) = -5.0;
  A2(1, 1) = 1.0;
  fam.field.quadratic = {A1, A2};
  fam.field.linear = Matrix::Zero(2, 2);
  fam.field.constant = Vector::Zero(2);
  fam.field.validate([](const Vector& z) -> Vector {
    const double x = z(0), y = z(1);
    Vector out(2);
    out << 2 * x * x - y * y, -10 * x * y + y * y;
    return out;
  });

  fam.invariant = [](const Vector& z) {
    const double x = z(0), y = z(1);
    return y * std::pow(y - 3 * x, 2) * std::pow(y + 4 * x, 3);
  };
  fam.invariant_grad = [](const Vector& z) -> Vector {
    const double x = z(0), y = z(1);
    const double u = y - 3 * x, v = y + 4 * x;
    Vector out(2);
    out << 6.0 * y * u * v * v * (y - 10 * x), 6.0 * u * v * v * (y * y - 2 * x * x);
    return out;
  };
  fam.default_state.resize(2);
  fam.default_state << -0.4, 0.1;
  return fam;
}

}  // namespace

KahanFamily kahan_family(const std::string& name,
                         const std::map<std::string, double>& params) {
  if (name == "quadratic-hamiltonian-2d") return quadratic_hamiltonian_2d(params);
  if (name == "suslov-2d") return suslov_2d(params);
  if (name == "nahm-octahedral") return nahm_octahedral();
  if (name == "nahm-icosahedral") return nahm_icosahedral();
  throw ConfigError("kahan_family: unknown family '" + name + "'");
}

}  // namespace geomint
