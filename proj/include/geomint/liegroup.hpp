#ifndef GEOMINT_LIEGROUP_HPP
#define GEOMINT_LIEGROUP_HPP

#include "geomint/matrix_functions.hpp"
#include "geomint/types.hpp"

namespace geomint {

enum class AlgebraKind { general, special_orthogonal, special_linear, skew_hermitian };
enum class GroupKind { general_linear, special_orthogonal, special_linear, unitary };

GroupKind group_of(AlgebraKind kind);

/// Square matrix tagged with the algebra it lives in.
template <typename Scalar = double>
struct AlgebraElement {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Mat m;
  AlgebraKind kind = AlgebraKind::general;

  void validate(double tol = 1e-12) const {
    switch (kind) {
      case AlgebraKind::special_orthogonal:
      case AlgebraKind::skew_hermitian:
        if ((m + m.adjoint()).cwiseAbs().maxCoeff() > tol)
          throw ConfigError("AlgebraElement: matrix not skew for its tag");
        break;
      case AlgebraKind::special_linear:
        if (std::abs(std::abs(m.trace()) - 0.0) > tol * std::max<double>(1.0, m.cwiseAbs().maxCoeff()))
          throw ConfigError("AlgebraElement: nonzero trace for sl tag");
        break;
      case AlgebraKind::general:
        break;
    }
  }
};

template <typename Scalar = double>
struct GroupElement {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Mat m;
  GroupKind kind = GroupKind::general_linear;

  double orthogonality_defect() const {
    return (m.adjoint() * m - Mat::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
  }
};

/// [a, b] = ab - ba; closed under the common tags.
template <typename Scalar>
AlgebraElement<Scalar> commutator(const AlgebraElement<Scalar>& a,
                                  const AlgebraElement<Scalar>& b) {
  if (a.m.rows() != b.m.rows() || a.m.cols() != b.m.cols())
    throw ConfigError("commutator: shape mismatch");
  if (a.kind != b.kind) throw ConfigError("commutator: mixed algebra tags");
  AlgebraElement<Scalar> out;
  out.kind = a.kind;
  out.m = a.m * b.m - b.m * a.m;
  return out;
}

/// Structure-preserving exponential: Pade scaling-and-squaring, with a polar
/// re-orthonormalization when a compact-group tag demands it and the defect
/// exceeds 1e-12.
GroupElement<double> expm_element(const AlgebraElement<double>& a);
GroupElement<std::complex<double>> expm_element(const AlgebraElement<std::complex<double>>& a);

/// Truncated dexpinv: sum_{m=0}^{m_max} (B_m/m!) ad_omega^m (a) with the
/// Bernoulli numbers B_0 = 1, B_1 = -1/2, B_2 = 1/6, ...
template <typename Scalar>
AlgebraElement<Scalar> dexpinv_apply(const AlgebraElement<Scalar>& a,
                                     const AlgebraElement<Scalar>& omega, int m_max) {
  if (m_max < 0 || m_max > 8) throw ConfigError("dexpinv_apply: m_max out of range [0, 8]");
  static const double bernoulli[9] = {1.0,        -0.5, 1.0 / 6.0, 0.0, -1.0 / 30.0,
                                      0.0,        1.0 / 42.0, 0.0, -1.0 / 30.0};
  double factorial = 1.0;
  AlgebraElement<Scalar> term = a;  // ad^0
  AlgebraElement<Scalar> out = a;
  out.m *= Scalar(bernoulli[0]);
  for (int m = 1; m <= m_max; ++m) {
    factorial *= m;
    term = commutator(omega, term);
    if (bernoulli[m] != 0.0) out.m += Scalar(bernoulli[m] / factorial) * term.m;
  }
  return out;
}

/// Left multiplication Lambda(p, y) = p y or the isospectral action
/// Lambda(p, y) = p y p^T.
struct GroupAction {
  enum class Kind { left_multiplication, isospectral };
  Kind kind = Kind::left_multiplication;

  Matrix apply(const GroupElement<double>& p, const Matrix& y) const;
  /// Identity and compatibility axioms on pseudorandom inputs (1e-10).
  void validate(int n, unsigned seed = 0x5eed) const;
};

/// ydot = lambda(a(t, y), y) written through a group action; a produces
/// algebra elements with a consistent tag.
struct LieGroupProblem {
  std::function<AlgebraElement<double>(double t, const Matrix& y)> coefficient;
  GroupAction action;
};

/// Three-stage Runge-Kutta-Munthe-Kaas step of order 3 with the commutator
/// correction omega = Delta + (h/6)[Delta, k1]; the output stays on the
/// manifold by construction.
Matrix rkmk3_step(const LieGroupProblem& problem, const Matrix& y, double t, double h);

/// Linear Lie-group equation vdot = a(t) v.
struct LinearLieProblem {
  std::function<AlgebraElement<double>(double t)> coefficient;
};

/// Fourth-order Gauss-Magnus step: omega = h/2 (a1 + a2) + sqrt(3)/12 h^2 [a2, a1]
/// with a at the two Gauss-Legendre nodes; returns e^omega v.
GroupElement<double> magnus4_step(const LinearLieProblem& problem,
                                  const GroupElement<double>& v, double t, double h);

}  // namespace geomint

#endif
