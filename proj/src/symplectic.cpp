#include "geomint/symplectic.hpp"

#include <cmath>
#include <random>

namespace geomint {

VectorFieldProblem HamiltonianSystem::as_problem() const {
  VectorFieldProblem p;
  p.dimension = 2 * dof;
  p.autonomous = true;
  const int d = dof;
  auto dp = dH_dp, dq = dH_dq;
  p.rhs = [d, dp, dq](double, const Vector& z) {
    Vector out(2 * d);
    out.head(d) = -dq(z.head(d), z.tail(d));
    out.tail(d) = dp(z.head(d), z.tail(d));
    return out;
  };
  return p;
}

void HamiltonianSystem::validate(unsigned seed) const {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const double delta = 1e-6;
  for (int trial = 0; trial < 5; ++trial) {
    Vector p(dof), q(dof);
    for (int i = 0; i < dof; ++i) { p(i) = unif(rng); q(i) = unif(rng); }
    const Vector gp = dH_dp(p, q), gq = dH_dq(p, q);
    for (int i = 0; i < dof; ++i) {
      Vector pp = p, pm = p, qp = q, qm = q;
      pp(i) += delta; pm(i) -= delta;
      qp(i) += delta; qm(i) -= delta;
      const double fdp = (energy(pp, q) - energy(pm, q)) / (2 * delta);
      const double fdq = (energy(p, qp) - energy(p, qm)) / (2 * delta);
      const double sp = std::max(1.0, std::abs(gp(i)));
      const double sq = std::max(1.0, std::abs(gq(i)));
      if (std::abs(fdp - gp(i)) > 1e-6 * sp || std::abs(fdq - gq(i)) > 1e-6 * sq)
        throw ConfigError("HamiltonianSystem: supplied gradients disagree with FD of H");
    }
  }
}

void ButcherTableau::validate() const {
  if (A.rows() != A.cols() || A.rows() != b.size() || b.size() != c.size())
    throw ConfigError("ButcherTableau: inconsistent shapes");
  for (int i = 0; i < stages(); ++i)
    if (std::abs(c(i) - A.row(i).sum()) > 1e-13)
      throw ConfigError("ButcherTableau: row-sum condition c_i = sum_j A_ij violated");
}

ButcherTableau gauss_legendre_tableau(int s) {
  ButcherTableau t;
  switch (s) {
    case 1:
      t.A = Matrix::Constant(1, 1, 0.5);
      t.b = Vector::Constant(1, 1.0);
      t.c = Vector::Constant(1, 0.5);
      break;
    case 2: {
      const double r = std::sqrt(3.0) / 6.0;
      t.A.resize(2, 2);
      t.A << 0.25, 0.25 - r, 0.25 + r, 0.25;
      t.b.resize(2);
      t.b << 0.5, 0.5;
      t.c.resize(2);
      t.c << 0.5 - r, 0.5 + r;
      break;
    }
    case 3: {
      const double r15 = std::sqrt(15.0);
      t.A.resize(3, 3);
      t.A << 5.0 / 36.0, 2.0 / 9.0 - r15 / 15.0, 5.0 / 36.0 - r15 / 30.0,
             5.0 / 36.0 + r15 / 24.0, 2.0 / 9.0, 5.0 / 36.0 - r15 / 24.0,
             5.0 / 36.0 + r15 / 30.0, 2.0 / 9.0 + r15 / 15.0, 5.0 / 36.0;
      t.b.resize(3);
      t.b << 5.0 / 18.0, 4.0 / 9.0, 5.0 / 18.0;
      t.c.resize(3);
      t.c << 0.5 - r15 / 10.0, 0.5, 0.5 + r15 / 10.0;
      break;
    }
    default:
      throw ConfigError("gauss_legendre_tableau: s must be 1, 2 or 3");
  }
  t.validate();
  return t;
}

ButcherTableau explicit_euler_tableau() {
  ButcherTableau t;
  t.A = Matrix::Zero(1, 1);
  t.b = Vector::Constant(1, 1.0);
  t.c = Vector::Zero(1);
  return t;
}

ButcherTableau classical_rk4_tableau() {
  ButcherTableau t;
  t.A = Matrix::Zero(4, 4);
  t.A(1, 0) = 0.5;
  t.A(2, 1) = 0.5;
  t.A(3, 2) = 1.0;
  t.b.resize(4);
  t.b << 1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0;
  t.c.resize(4);
  t.c << 0.0, 0.5, 0.5, 1.0;
  t.validate();
  return t;
}

ButcherTableau explicit_rk3_tableau() {
  ButcherTableau t;
  t.A = Matrix::Zero(3, 3);
  t.A(1, 0) = 0.5;
  t.A(2, 0) = -1.0;
  t.A(2, 1) = 2.0;
  t.b.resize(3);
  t.b << 1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0;
  t.c.resize(3);
  t.c << 0.0, 0.5, 1.0;
  t.validate();
  return t;
}

Vector implicit_rk_step(const VectorFieldProblem& problem, const ButcherTableau& tableau,
                        double t, const Vector& x, double h, const SolverSettings& settings) {
  const int s = tableau.stages();
  const Eigen::Index d = x.size();

  // stacked stage derivatives K = (K_1; ...; K_s)
  auto stage_map = [&](const Vector& K) {
    Vector out(s * d);
    for (int i = 0; i < s; ++i) {
      Vector xi = x;
      for (int j = 0; j < s; ++j)
        if (tableau.A(i, j) != 0.0) xi += h * tableau.A(i, j) * K.segment(j * d, d);
      out.segment(i * d, d) = problem.rhs(t + tableau.c(i) * h, xi);
    }
    return out;
  };

  Vector K0(s * d);
  const Vector f0 = problem.rhs(t, x);
  for (int i = 0; i < s; ++i) K0.segment(i * d, d) = f0;

  Vector K;
  try {
    K = fixed_point_solve(stage_map, K0, settings);
  } catch (const SolverError&) {
    auto residual = [&](const Vector& Kv) -> Vector { return Kv - stage_map(Kv); };
    auto jac = [&](const Vector& Kv) -> Matrix {
      Matrix J = Matrix::Identity(s * d, s * d);
      const double scale = std::max(1.0, x.lpNorm<Eigen::Infinity>());
      for (int i = 0; i < s; ++i) {
        Vector xi = x;
        for (int j = 0; j < s; ++j)
          if (tableau.A(i, j) != 0.0) xi += h * tableau.A(i, j) * Kv.segment(j * d, d);
        const Matrix fp = problem.jacobian(t + tableau.c(i) * h, xi, settings.fd_step * scale);
        for (int j = 0; j < s; ++j)
          if (tableau.A(i, j) != 0.0)
            J.block(i * d, j * d, d, d) -= h * tableau.A(i, j) * fp;
      }
      return J;
    };
    K = newton_solve(residual, K0, settings, jac);
  }

  Vector xn = x;
  for (int i = 0; i < s; ++i) xn += h * tableau.b(i) * K.segment(i * d, d);
  return xn;
}

Vector explicit_rk_step(const VectorFieldProblem& problem, const ButcherTableau& tableau,
                        double t, const Vector& x, double h) {
  const int s = tableau.stages();
  const Eigen::Index d = x.size();
  std::vector<Vector> K(s);
  for (int i = 0; i < s; ++i) {
    Vector xi = x;
    for (int j = 0; j < i; ++j)
      if (tableau.A(i, j) != 0.0) xi += h * tableau.A(i, j) * K[j];
    K[i] = problem.rhs(t + tableau.c(i) * h, xi);
  }
  Vector xn = x;
  for (int i = 0; i < s; ++i) xn += h * tableau.b(i) * K[i];
  (void)d;
  return xn;
}

Vector implicit_midpoint_step(const VectorFieldProblem& problem, double t, const Vector& x,
                              double h, const SolverSettings& settings) {
  auto map = [&](const Vector& xn) -> Vector {
    return x + h * problem.rhs(t + 0.5 * h, 0.5 * (x + xn));
  };
  return solve_implicit(map, x, settings);
}

Vector gauss_legendre_step(int s, const VectorFieldProblem& problem, double t,
                           const Vector& x, double h, const SolverSettings& settings) {
  return implicit_rk_step(problem, gauss_legendre_tableau(s), t, x, h, settings);
}

Vector explicit_euler_step(const VectorFieldProblem& problem, double t, const Vector& x,
                           double h) {
  return x + h * problem.rhs(t, x);
}

Vector rk4_step(const VectorFieldProblem& problem, double t, const Vector& x, double h) {
  return explicit_rk_step(problem, classical_rk4_tableau(), t, x, h);
}

void PartitionedSystem::validate() const {
  if (mass.rows() != mass.cols()) throw ConfigError("PartitionedSystem: mass not square");
  if ((mass - mass.transpose()).lpNorm<Eigen::Infinity>() > 1e-12)
    throw ConfigError("PartitionedSystem: mass not symmetric");
  Eigen::LLT<Matrix> llt(mass);
  if (llt.info() != Eigen::Success)
    throw ConfigError("PartitionedSystem: mass not positive definite");
}

HamiltonianSystem PartitionedSystem::as_hamiltonian() const {
  HamiltonianSystem ham;
  ham.dof = static_cast<int>(mass.rows());
  const Matrix Minv = mass.llt().solve(Matrix::Identity(mass.rows(), mass.cols()));
  auto V = potential;
  auto gV = grad_potential;
  ham.energy = [Minv, V](const Vector& p, const Vector& q) {
    return 0.5 * p.dot(Minv * p) + V(q);
  };
  ham.dH_dp = [Minv](const Vector& p, const Vector&) -> Vector { return Minv * p; };
  ham.dH_dq = [gV](const Vector&, const Vector& q) -> Vector { return gV(q); };
  return ham;
}

std::pair<Vector, Vector> stormer_verlet_step(const PartitionedSystem& system,
                                              const Vector& q, const Vector& p, double h) {
  const Vector p_half = p - 0.5 * h * system.grad_potential(q);
  const Vector q_next = q + h * system.mass.llt().solve(p_half);
  const Vector p_next = p_half - 0.5 * h * system.grad_potential(q_next);
  return {q_next, p_next};
}

Vector stormer_verlet_step_z(const PartitionedSystem& system, const Vector& z, double h) {
  const Eigen::Index d = z.size() / 2;
  auto [qn, pn] = stormer_verlet_step(system, z.tail(d), z.head(d), h);
  Vector out(2 * d);
  out.head(d) = pn;
  out.tail(d) = qn;
  return out;
}

SymplecticityCheck rk_symplecticity_check(const ButcherTableau& tableau) {
  const int s = tableau.stages();
  SymplecticityCheck check;
  check.defect.resize(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j)
      check.defect(i, j) = tableau.b(i) * tableau.A(i, j) + tableau.b(j) * tableau.A(j, i) -
                           tableau.b(i) * tableau.b(j);
  check.max_defect = check.defect.cwiseAbs().maxCoeff();
  check.symplectic = check.max_defect < 1e-14;
  return check;
}

double symplecticity_defect(const StepMap& step, double t, const Vector& x, double h,
                            double delta) {
  const Eigen::Index dim = x.size();
  if (dim % 2 != 0) throw ConfigError("symplecticity_defect: odd dimension");
  const Eigen::Index d = dim / 2;
  const Matrix DPhi =
      fd_jacobian([&](const Vector& y) { return step(t, y, h); }, x, delta);
  Matrix J = Matrix::Zero(dim, dim);
  J.topRightCorner(d, d) = Matrix::Identity(d, d);
  J.bottomLeftCorner(d, d) = -Matrix::Identity(d, d);
  return (DPhi.transpose() * J * DPhi - J).cwiseAbs().maxCoeff();
}

}  // namespace geomint
