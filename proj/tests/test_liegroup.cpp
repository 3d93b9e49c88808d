#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "geomint/core.hpp"
#include "geomint/liegroup.hpp"
#include "geomint/registry.hpp"

using namespace geomint;

namespace {

AlgebraElement<double> so3(double a, double b, double c) {
  Matrix m(3, 3);
  m << 0, -c, b, c, 0, -a, -b, a, 0;
  return {m, AlgebraKind::special_orthogonal};
}

Matrix random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = gauss(rng);
  return m;
}

}  // namespace

TEST_CASE("commutator") {
  std::mt19937_64 rng(5);
  SUBCASE("[a, a] = 0") {
    const auto a = so3(0.3, -0.2, 0.9);
    CHECK(commutator(a, a).m.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("commuting diagonal pair") {
    AlgebraElement<double> a{Vector::LinSpaced(3, 1, 3).asDiagonal(), AlgebraKind::general};
    AlgebraElement<double> b{Vector::LinSpaced(3, -1, 5).asDiagonal(), AlgebraKind::general};
    CHECK(commutator(a, b).m.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("so(3) basis relations [e1, e2] = e3") {
    const auto e1 = so3(1, 0, 0), e2 = so3(0, 1, 0), e3 = so3(0, 0, 1);
    CHECK((commutator(e1, e2).m - e3.m).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(commutator(e1, e2).kind == AlgebraKind::special_orthogonal);
  }
  SUBCASE("shape mismatch rejected") {
    AlgebraElement<double> a{Matrix::Zero(2, 2), AlgebraKind::general};
    AlgebraElement<double> b{Matrix::Zero(3, 3), AlgebraKind::general};
    CHECK_THROWS_AS(commutator(a, b), ConfigError);
  }
  (void)rng;
}

TEST_CASE("expm_element") {
  SUBCASE("exp(0) = I") {
    AlgebraElement<double> zero{Matrix::Zero(3, 3), AlgebraKind::special_orthogonal};
    const auto g = expm_element(zero);
    CHECK((g.m - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(g.kind == GroupKind::special_orthogonal);
  }
  SUBCASE("so(2) generator produces the rotation") {
    Matrix J(2, 2);
    J << 0.0, -1.0, 1.0, 0.0;
    AlgebraElement<double> a{(M_PI / 3.0) * J, AlgebraKind::special_orthogonal};
    const auto g = expm_element(a);
    CHECK(g.m(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(g.m(1, 0) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
  }
  SUBCASE("random so(5) exponentials are orthogonal to 1e-12") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 3; ++trial) {
      Matrix m = random_matrix(5, rng);
      AlgebraElement<double> a{m - m.transpose(), AlgebraKind::special_orthogonal};
      a.validate();
      const auto g = expm_element(a);
      CHECK(g.orthogonality_defect() < 1e-12);
      CHECK(g.m.determinant() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("sl tag maps to unit determinant") {
    Matrix m(2, 2);
    m << 0.4, 1.1, 0.6, -0.4;
    AlgebraElement<double> a{m, AlgebraKind::special_linear};
    a.validate();
    CHECK(expm_element(a).m.determinant() == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("skew-hermitian tag gives a unitary") {
    Eigen::MatrixXcd m(2, 2);
    m << std::complex<double>(0, 0.3), std::complex<double>(0.2, 0.1),
        std::complex<double>(-0.2, 0.1), std::complex<double>(0, -0.7);
    AlgebraElement<std::complex<double>> a{m, AlgebraKind::skew_hermitian};
    a.validate();
    CHECK(expm_element(a).orthogonality_defect() < 1e-13);
  }
}

TEST_CASE("dexpinv_apply") {
  std::mt19937_64 rng(13);
  const Matrix ma = random_matrix(4, rng), mo = random_matrix(4, rng);
  AlgebraElement<double> a{ma, AlgebraKind::general}, omega{mo, AlgebraKind::general};

  SUBCASE("m_max = 0 returns a") {
    CHECK((dexpinv_apply(a, omega, 0).m - a.m).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("commuting arguments return a for any depth") {
    AlgebraElement<double> d1{Vector::LinSpaced(4, 1, 4).asDiagonal(), AlgebraKind::general};
    AlgebraElement<double> d2{Vector::LinSpaced(4, 2, 8).asDiagonal(), AlgebraKind::general};
    CHECK((dexpinv_apply(d1, d2, 6).m - d1.m).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("m_max = 1 is a - [omega, a]/2") {
    const Matrix expected = a.m - 0.5 * (omega.m * a.m - a.m * omega.m);
    CHECK((dexpinv_apply(a, omega, 1).m - expected).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("truncation error shrinks linearly with ||omega||") {
    // difference between depth-2 and depth-8 is O(||omega||^4) but the first
    // neglected Bernoulli term dominates; halving omega divides it by >= 8
    AlgebraElement<double> om1{0.2 * mo, AlgebraKind::general};
    AlgebraElement<double> om2{0.1 * mo, AlgebraKind::general};
    const double e1 =
        (dexpinv_apply(a, om1, 2).m - dexpinv_apply(a, om1, 8).m).cwiseAbs().maxCoeff();
    const double e2 =
        (dexpinv_apply(a, om2, 2).m - dexpinv_apply(a, om2, 8).m).cwiseAbs().maxCoeff();
    CHECK(e1 / e2 > 8.0);
  }
  SUBCASE("depth limited to 8") {
    CHECK_THROWS_AS(dexpinv_apply(a, omega, 9), ConfigError);
  }
}

TEST_CASE("group actions satisfy their axioms") {
  GroupAction left{GroupAction::Kind::left_multiplication};
  GroupAction iso{GroupAction::Kind::isospectral};
  left.validate(4);
  iso.validate(4);
}

TEST_CASE("rkmk3") {
  SUBCASE("constant coefficient is the exact exponential step") {
    const auto a = so3(0.4, -0.1, 0.7);
    LieGroupProblem prob;
    prob.action.kind = GroupAction::Kind::left_multiplication;
    prob.coefficient = [a](double, const Matrix&) { return a; };
    const Matrix y0 = Matrix::Identity(3, 3);
    const Matrix y1 = rkmk3_step(prob, y0, 0.0, 0.3);
    const Matrix exact = expm_element(AlgebraElement<double>{0.3 * a.m, a.kind}).m;
    CHECK((y1 - exact).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("commuting data a(t) = t E: the step is exact to round-off") {
    Matrix E(2, 2);
    E << 0.0, 1.0, -0.3, 0.2;
    LieGroupProblem prob;
    prob.action.kind = GroupAction::Kind::left_multiplication;
    prob.coefficient = [E](double t, const Matrix&) {
      return AlgebraElement<double>{t * E, AlgebraKind::general};
    };
    const Matrix y0 = Matrix::Identity(2, 2);
    // exact flow: exp(int_t^{t+h} s ds E); Simpson integrates s exactly and
    // all stages commute
    const double t = 0.3, h = 0.4;
    const Matrix exact =
        expm_element(AlgebraElement<double>{0.5 * ((t + h) * (t + h) - t * t) * E,
                                            AlgebraKind::general})
            .m;
    CHECK((rkmk3_step(prob, y0, t, h) - exact).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("non-commuting a(t) = A + t B: global error ratio about 8 when halving h") {
    Matrix A(2, 2), B(2, 2);
    A << 0.0, 1.0, -1.0, 0.0;
    B << 0.5, 0.0, 0.0, -0.5;  // [A, B] != 0
    LieGroupProblem prob;
    prob.action.kind = GroupAction::Kind::left_multiplication;
    prob.coefficient = [A, B](double t, const Matrix&) {
      return AlgebraElement<double>{A + t * B, AlgebraKind::general};
    };
    const Matrix y0 = Matrix::Identity(2, 2);
    const double T = 0.8;
    Matrix ref = y0;
    const int nref = 4096;
    for (int i = 0; i < nref; ++i) ref = rkmk3_step(prob, ref, i * T / nref, T / nref);
    auto error_at = [&](int n) {
      Matrix y = y0;
      for (int i = 0; i < n; ++i) y = rkmk3_step(prob, y, i * T / n, T / n);
      return (y - ref).cwiseAbs().maxCoeff();
    };
    const double r = error_at(8) / error_at(16);
    CHECK(r == doctest::Approx(8.0).epsilon(0.125));
  }
  SUBCASE("isospectral action preserves eigenvalues over 1000 steps") {
    ProblemInstance iso = make_problem("isospectral");
    const Matrix y0 = unflatten(iso.initial_state, 3);
    Eigen::SelfAdjointEigenSolver<Matrix> eig0(y0);
    Matrix y = y0;
    for (int i = 0; i < 1000; ++i) y = rkmk3_step(*iso.lie_problem, y, 0.0, 0.02);
    CHECK((y - y.transpose()).cwiseAbs().maxCoeff() < 1e-9);
    Eigen::SelfAdjointEigenSolver<Matrix> eig1(y);
    CHECK((eig1.eigenvalues() - eig0.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("magnus4") {
  SUBCASE("scalar a(t) = t integrates exactly") {
    LinearLieProblem prob;
    prob.coefficient = [](double t) {
      return AlgebraElement<double>{Matrix::Constant(1, 1, t), AlgebraKind::general};
    };
    GroupElement<double> v{Matrix::Identity(1, 1), GroupKind::general_linear};
    const auto v1 = magnus4_step(prob, v, 0.3, 0.4);
    // exact: exp(int_0.3^0.7 t dt) = exp(0.2)
    CHECK(v1.m(0, 0) == doctest::Approx(std::exp(0.5 * (0.49 - 0.09))).epsilon(1e-14));
  }
  SUBCASE("skew-symmetric a(t) gives an orthogonal step") {
    LinearLieProblem prob;
    prob.coefficient = [](double t) {
      Matrix m(3, 3);
      m << 0, -t, 0.5, t, 0, std::sin(t), -0.5, -std::sin(t), 0;
      return AlgebraElement<double>{m, AlgebraKind::special_orthogonal};
    };
    GroupElement<double> v{Matrix::Identity(3, 3), GroupKind::special_orthogonal};
    const auto v1 = magnus4_step(prob, v, 0.0, 0.5);
    CHECK((v1.m.transpose() * v1.m - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("Mathieu-type equation: observed order about 4") {
    ProblemInstance m = make_problem("mathieu");
    StepMap step = make_integrator("magnus4", Json::object(), m);
    const OrderEstimate est = observed_order(m.field, step, m.initial_state, 0.0, 2.0,
                                             {0.2, 0.1, 0.05, 0.025});
    CHECK(est.slope == doctest::Approx(4.0).epsilon(0.075));
  }
  SUBCASE("group invariants hold over 10^4 steps without renormalization drift") {
    ProblemInstance m = make_problem("mathieu");
    const LinearLieProblem prob = *m.linear_lie;
    GroupElement<double> v{Matrix::Identity(2, 2), GroupKind::special_linear};
    for (int i = 0; i < 10000; ++i) v = magnus4_step(prob, v, i * 0.01, 0.01);
    CHECK(std::abs(v.m.determinant() - 1.0) < 1e-9);
  }
}
