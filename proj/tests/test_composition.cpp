#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

#include "geomint/composition.hpp"
#include "geomint/problems.hpp"
#include "geomint/registry.hpp"
#include "geomint/symplectic.hpp"

using namespace geomint;

namespace {

// pendulum split on z = (p, q): drift (q += h p) and kick (p -= h sin q)
SplitProblem pendulum_split() {
  SplitProblem split;
  split.full = pendulum().as_problem();
  FlowPart drift, kick;
  drift.field = make_autonomous_problem(2, [](const Vector& z) {
    Vector f(2);
    f << 0.0, z(0);
    return f;
  });
  drift.flow = [](double, const Vector& z, double h) {
    Vector out = z;
    out(1) += h * z(0);
    return out;
  };
  kick.field = make_autonomous_problem(2, [](const Vector& z) {
    Vector f(2);
    f << -std::sin(z(1)), 0.0;
    return f;
  });
  kick.flow = [](double, const Vector& z, double h) {
    Vector out = z;
    out(0) -= h * std::sin(z(1));
    return out;
  };
  split.parts = {drift, kick};
  split.validate();
  return split;
}

}  // namespace

TEST_CASE("strang scheme structure") {
  const CompositionScheme s = strang_scheme();
  CHECK(s.palindromic());
  CHECK(s.order == 2);
  s.validate(2);  // weights per part sum to 1
}

TEST_CASE("yoshida boost") {
  SUBCASE("coefficients for P = 1") {
    const CompositionScheme y4 = yoshida_boost(strang_scheme());
    const double alpha = 0.35120719195965763;
    // outer Strang copies scaled by 1 + alpha, inner by -(1 + 2 alpha)
    CHECK(y4.palindromic());
    CHECK(y4.order == 4);
    y4.validate(2);
    REQUIRE(y4.stages.size() == 7);  // touching half-kicks merged
    CHECK(y4.stages[1].weight == doctest::Approx(1.0 + alpha).epsilon(1e-12));
    CHECK(y4.stages[3].weight == doctest::Approx(-(1.0 + 2.0 * alpha)).epsilon(1e-12));
    double w_sum = 0.0;
    for (const auto& st : y4.stages)
      if (st.part == 1) w_sum += st.weight;
    CHECK(w_sum == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("non-palindromic and odd-order inputs rejected") {
    CompositionScheme lt;  // Lie-Trotter
    lt.stages = {{0, 1.0}, {1, 1.0}};
    lt.order = 1;
    CHECK_THROWS_AS(yoshida_boost(lt), ConfigError);
  }
  SUBCASE("double boost keeps the palindrome") {
    const CompositionScheme y6 = yoshida_boost(yoshida_boost(strang_scheme()));
    CHECK(y6.palindromic());
    CHECK(y6.order == 6);
    y6.validate(2);
  }
}

TEST_CASE("compose_step") {
  SUBCASE("single part with weight 1 is the exact part flow") {
    SplitProblem split = pendulum_split();
    CompositionScheme only_drift;
    only_drift.stages = {{0, 1.0}};
    only_drift.order = 1;
    Vector z(2);
    z << 0.7, 0.2;
    const Vector out = compose_step(only_drift, split, 0.0, z, 0.3);
    CHECK((out - split.parts[0].flow(0.0, z, 0.3)).lpNorm<Eigen::Infinity>() == 0.0);
  }
  SUBCASE("commuting diagonal parts: any consistent scheme is exact") {
    SplitProblem split;
    Matrix D1 = Vector::LinSpaced(2, 0.5, -0.3).asDiagonal();
    Matrix D2 = Vector::LinSpaced(2, -1.0, 0.2).asDiagonal();
    split.full = make_autonomous_problem(2, [D1, D2](const Vector& x) -> Vector {
      return (D1 + D2) * x;
    });
    for (const Matrix& D : {D1, D2}) {
      FlowPart part;
      part.field = make_autonomous_problem(2, [D](const Vector& x) -> Vector { return D * x; });
      part.flow = [D](double, const Vector& x, double h) -> Vector {
        return (h * D).exp() * x;
      };
      split.parts.push_back(part);
    }
    split.validate();
    Vector x(2);
    x << 1.0, 2.0;
    const Vector strang = compose_step(strang_scheme(), split, 0.0, x, 0.4);
    const Vector exact = ((D1 + D2) * 0.4).exp() * x;
    CHECK((strang - exact).lpNorm<Eigen::Infinity>() < 1e-14);
  }
  SUBCASE("Strang local error is O(h^3) for non-commuting parts") {
    // A strictly upper, B strictly lower: exact part flows are I + hA, I + hB
    Matrix A = Matrix::Zero(2, 2), B = Matrix::Zero(2, 2);
    A(0, 1) = 1.0;
    B(1, 0) = 1.0;
    SplitProblem split;
    split.full = make_autonomous_problem(2, [A, B](const Vector& x) -> Vector {
      return (A + B) * x;
    });
    for (const Matrix& M : {A, B}) {
      FlowPart part;
      part.field = make_autonomous_problem(2, [M](const Vector& x) -> Vector { return M * x; });
      part.flow = [M](double, const Vector& x, double h) -> Vector {
        return x + h * M * x;  // exact: M is nilpotent
      };
      split.parts.push_back(part);
    }
    split.validate();
    Vector x(2);
    x << 1.0, 1.0;
    auto one_step_error = [&](double h) {
      const Vector approx = compose_step(strang_scheme(), split, 0.0, x, h);
      const Vector exact = ((A + B) * h).exp() * x;  // dense oracle
      return (approx - exact).lpNorm<Eigen::Infinity>();
    };
    const double ratio = one_step_error(0.2) / one_step_error(0.1);
    CHECK(ratio == doctest::Approx(8.0).epsilon(0.125));
  }
  SUBCASE("negative-time rejection honored") {
    SplitProblem split = pendulum_split();
    split.parts[0].negative_time_ok = false;
    CompositionScheme y4 = yoshida_boost(strang_scheme());
    Vector z(2);
    z << 0.1, 0.1;
    CHECK_THROWS_AS(compose_step(y4, split, 0.0, z, 0.1), ConfigError);
  }
}

TEST_CASE("observed orders of Strang and Yoshida boosts on the split pendulum") {
  SplitProblem split = pendulum_split();
  Vector z0(2);
  z0 << 0.4, 0.8;
  const VectorFieldProblem& full = split.full;

  auto order_of = [&](const CompositionScheme& scheme, const std::vector<double>& hs) {
    StepMap step = make_composition_step(scheme, split);
    return observed_order(full, step, z0, 0.0, 2.0, hs);
  };

  const OrderEstimate strang = order_of(strang_scheme(), {0.2, 0.1, 0.05, 0.025});
  CHECK(strang.slope == doctest::Approx(2.0).epsilon(0.1));

  const OrderEstimate y4 = order_of(yoshida_boost(strang_scheme()), {0.2, 0.1, 0.05, 0.025});
  CHECK(y4.slope == doctest::Approx(4.0).epsilon(0.075));

  const OrderEstimate y6 =
      order_of(yoshida_boost(yoshida_boost(strang_scheme())), {0.4, 0.2, 0.1});
  CHECK(y6.slope == doctest::Approx(6.0).epsilon(0.5 / 6.0));
}

TEST_CASE("time symmetry defect") {
  SUBCASE("palindromic composition is reversible to round-off") {
    SplitProblem split = pendulum_split();
    StepMap strang = make_composition_step(strang_scheme(), split);
    Vector z(2);
    z << 0.5, 1.0;
    CHECK(time_symmetry_defect(strang, 0.0, z, 0.1) < 1e-12);
  }
  SUBCASE("implicit midpoint is self-adjoint to solver tolerance") {
    VectorFieldProblem p = pendulum().as_problem();
    StepMap midpoint = [&p](double t, const Vector& x, double h) {
      return implicit_midpoint_step(p, t, x, h);
    };
    Vector z(2);
    z << 0.5, 1.0;
    CHECK(time_symmetry_defect(midpoint, 0.0, z, 0.1) < 1e-11);
  }
  SUBCASE("explicit Euler on xdot = x^2: defect computed by direct evaluation") {
    VectorFieldProblem p = make_autonomous_problem(1, [](const Vector& x) {
      Vector f(1);
      f << x(0) * x(0);
      return f;
    });
    StepMap euler = [&p](double t, const Vector& x, double h) {
      return explicit_euler_step(p, t, x, h);
    };
    Vector one = Vector::Constant(1, 1.0);
    // forward: 1 + 0.1 = 1.1; backward: 1.1 - 0.1 * 1.21 = 0.979
    const double defect = time_symmetry_defect(euler, 0.0, one, 0.1);
    CHECK(defect == doctest::Approx(0.021).epsilon(1e-10));
    CHECK(defect > 0.0);
  }
}
