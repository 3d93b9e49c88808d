#include "geomint/liegroup.hpp"

#include <random>

namespace geomint {

GroupKind group_of(AlgebraKind kind) {
  switch (kind) {
    case AlgebraKind::special_orthogonal: return GroupKind::special_orthogonal;
    case AlgebraKind::special_linear: return GroupKind::special_linear;
    case AlgebraKind::skew_hermitian: return GroupKind::unitary;
    case AlgebraKind::general: return GroupKind::general_linear;
  }
  return GroupKind::general_linear;
}

namespace {

template <typename Scalar>
GroupElement<Scalar> expm_element_impl(const AlgebraElement<Scalar>& a) {
  GroupElement<Scalar> g;
  g.kind = group_of(a.kind);
  g.m = expm<Scalar>(a.m);
  if (g.kind == GroupKind::special_orthogonal || g.kind == GroupKind::unitary) {
    if (g.orthogonality_defect() > 1e-12) {
      // polar projection onto the compact group
      Eigen::JacobiSVD<typename GroupElement<Scalar>::Mat> svd(
          g.m, Eigen::ComputeThinU | Eigen::ComputeThinV);
      g.m = svd.matrixU() * svd.matrixV().adjoint();
    }
  }
  return g;
}

}  // namespace

GroupElement<double> expm_element(const AlgebraElement<double>& a) {
  return expm_element_impl<double>(a);
}

GroupElement<std::complex<double>> expm_element(
    const AlgebraElement<std::complex<double>>& a) {
  return expm_element_impl<std::complex<double>>(a);
}

Matrix GroupAction::apply(const GroupElement<double>& p, const Matrix& y) const {
  switch (kind) {
    case Kind::left_multiplication:
      return p.m * y;
    case Kind::isospectral:
      return p.m * y * p.m.transpose();
  }
  throw ConfigError("GroupAction: unknown kind");
}

void GroupAction::validate(int n, unsigned seed) const {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_orthogonal = [&]() {
    Matrix A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = gauss(rng);
    Eigen::HouseholderQR<Matrix> qr(A);
    GroupElement<double> g;
    g.kind = GroupKind::special_orthogonal;
    g.m = qr.householderQ();
    return g;
  };
  for (int trial = 0; trial < 3; ++trial) {
    Matrix y(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) y(i, j) = gauss(rng);
    GroupElement<double> id{Matrix::Identity(n, n), GroupKind::special_orthogonal};
    if ((apply(id, y) - y).cwiseAbs().maxCoeff() > 1e-10)
      throw ConfigError("GroupAction: identity axiom fails");
    const auto p = random_orthogonal();
    const auto q = random_orthogonal();
    GroupElement<double> pq{p.m * q.m, GroupKind::special_orthogonal};
    const double err = (apply(p, apply(q, y)) - apply(pq, y)).cwiseAbs().maxCoeff();
    if (err > 1e-10 * std::max(1.0, y.cwiseAbs().maxCoeff()))
      throw ConfigError("GroupAction: compatibility axiom fails");
  }
}

Matrix rkmk3_step(const LieGroupProblem& problem, const Matrix& y, double t, double h) {
  const auto k1 = problem.coefficient(t, y);
  AlgebraElement<double> e1{0.5 * h * k1.m, k1.kind};
  const auto k2 = problem.coefficient(t + 0.5 * h, problem.action.apply(expm_element(e1), y));
  AlgebraElement<double> e2{-h * k1.m + 2.0 * h * k2.m, k1.kind};
  const auto k3 = problem.coefficient(t + h, problem.action.apply(expm_element(e2), y));
  AlgebraElement<double> delta{h * (k1.m / 6.0 + (2.0 / 3.0) * k2.m + k3.m / 6.0), k1.kind};
  AlgebraElement<double> omega = delta;
  omega.m += (h / 6.0) * commutator(delta, k1).m;
  return problem.action.apply(expm_element(omega), y);
}

GroupElement<double> magnus4_step(const LinearLieProblem& problem,
                                  const GroupElement<double>& v, double t, double h) {
  const double r = std::sqrt(3.0) / 6.0;
  const auto a1 = problem.coefficient(t + (0.5 - r) * h);
  const auto a2 = problem.coefficient(t + (0.5 + r) * h);
  AlgebraElement<double> omega;
  omega.kind = a1.kind;
  omega.m = 0.5 * h * (a1.m + a2.m) +
            (std::sqrt(3.0) / 12.0) * h * h * (a2.m * a1.m - a1.m * a2.m);
  const auto e = expm_element(omega);
  GroupElement<double> out;
  out.kind = v.kind;
  out.m = e.m * v.m;
  return out;
}

}  // namespace geomint
