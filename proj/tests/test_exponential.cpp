#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "geomint/exponential.hpp"
#include "geomint/problems.hpp"

using namespace geomint;

namespace {

SecondOrderProblem scalar_oscillator(double omega) {
  SecondOrderProblem p;
  p.n = 1;
  p.Omega = Matrix::Constant(1, 1, omega);
  p.g = [](const Vector& y) { return Vector(Vector::Zero(y.size())); };
  p.finalize();
  return p;
}

}  // namespace

TEST_CASE("exponential euler") {
  SUBCASE("b = 0 gives the exact linear flow") {
    SemilinearProblem p;
    p.A.resize(2, 2);
    p.A << 0.0, 1.0, -1.0, 0.0;
    p.b = [](const Vector& y) { return Vector(Vector::Zero(y.size())); };
    Vector y(2);
    y << 1.0, 0.0;
    const Vector yn = exponential_euler_step(p, y, 0.7);
    CHECK(yn(0) == doctest::Approx(std::cos(0.7)).epsilon(1e-13));
    CHECK(yn(1) == doctest::Approx(-std::sin(0.7)).epsilon(1e-13));
  }
  SUBCASE("A = 0 reduces to explicit Euler") {
    SemilinearProblem p;
    p.A = Matrix::Zero(2, 2);
    p.b = [](const Vector& y) -> Vector { return y.cwiseProduct(y); };
    Vector y(2);
    y << 2.0, 3.0;
    const Vector yn = exponential_euler_step(p, y, 0.1);
    CHECK((yn - (y + 0.1 * p.b(y))).lpNorm<Eigen::Infinity>() < 1e-14);
  }
  SUBCASE("exact for constant b: ydot = -y + 1") {
    SemilinearProblem p;
    p.A = -Matrix::Identity(1, 1);
    p.b = [](const Vector& y) { return Vector(Vector::Ones(y.size())); };
    const Vector yn = exponential_euler_step(p, Vector::Zero(1), 0.5);
    CHECK(yn(0) == doctest::Approx(1.0 - std::exp(-0.5)).epsilon(1e-14));
  }
}

TEST_CASE("trig_voc_step") {
  SUBCASE("pure oscillator propagated exactly") {
    SecondOrderProblem p = scalar_oscillator(10.0);
    Vector y = Vector::Constant(1, 1.0), v = Vector::Zero(1);
    auto [yn, vn] = trig_voc_step(p, y, v, 0.1);
    CHECK(yn(0) == doctest::Approx(std::cos(1.0)).epsilon(1e-14));
    CHECK(vn(0) == doctest::Approx(-10.0 * std::sin(1.0)).epsilon(1e-14));
  }
  SUBCASE("Omega = 0 reduces to free flight plus quadratured forcing") {
    SecondOrderProblem p;
    p.n = 1;
    p.Omega = Matrix::Zero(1, 1);
    p.g = [](const Vector&) { return Vector(Vector::Constant(1, 2.0)); };
    p.finalize();
    Vector y = Vector::Zero(1), v = Vector::Constant(1, 1.0);
    auto [yn, vn] = trig_voc_step(p, y, v, 0.5);
    // exact: y + h v + h^2/2 g, v + h g for constant g
    CHECK(yn(0) == doctest::Approx(0.5 + 0.125 * 2.0).epsilon(1e-13));
    CHECK(vn(0) == doctest::Approx(1.0 + 0.5 * 2.0).epsilon(1e-13));
  }
  SUBCASE("oscillatory energy exactly conserved for g = 0 over 1000 steps") {
    OscillatoryHamiltonian osc;
    osc.n_slow = 0;
    osc.fast_blocks = {{2, 25.0}};
    osc.U = [](const Vector&) { return 0.0; };
    osc.grad_U = [](const Vector& q) { return Vector(Vector::Zero(q.size())); };
    SecondOrderProblem p = osc.as_second_order();
    Vector y(2), v(2);
    y << 1.0 / 25.0, 0.0;
    v << 0.3, 1.0;
    const double I0 = oscillatory_energy(osc, v, y);
    for (int i = 0; i < 1000; ++i) {
      auto [yn, vn] = trig_voc_step(p, y, v, 0.05);
      y = yn;
      v = vn;
    }
    CHECK(std::abs(oscillatory_energy(osc, v, y) - I0) < 1e-12);
  }
  SUBCASE("order 2 with midpoint-frozen forcing") {
    SecondOrderProblem p;
    p.n = 1;
    p.Omega = Matrix::Constant(1, 1, 3.0);
    p.g = [](const Vector& y) -> Vector { return -y.array().cube().matrix(); };
    p.finalize();
    VectorFieldProblem ode = make_autonomous_problem(2, [&p](const Vector& z) {
      Vector f(2);
      f << z(1), -9.0 * z(0) + p.g(z.head(1))(0);
      return f;
    });
    StepMap step = [&p](double, const Vector& z, double h) {
      auto [yn, vn] = trig_voc_step(p, z.head(1), z.tail(1), h);
      Vector out(2);
      out << yn(0), vn(0);
      return out;
    };
    Vector z0(2);
    z0 << 0.8, 0.0;
    const OrderEstimate est = observed_order(ode, step, z0, 0.0, 1.0, {0.1, 0.05, 0.025});
    CHECK(est.slope == doctest::Approx(2.0).epsilon(0.15));
  }
}

TEST_CASE("filters") {
  const auto filters = builtin_filters();
  REQUIRE(filters.size() == 2);
  for (const auto& f : filters) {
    CAPTURE(f.name);
    CHECK(f.scalar(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    for (int k = 1; k <= 3; ++k) CHECK(std::abs(f.scalar(k * M_PI)) < 1e-12);
  }
  CHECK(std::abs(filters[1].scalar(2 * M_PI)) < 1e-16);  // sinc^2 at 2 pi
  CHECK_THROWS_AS(filter_by_name("hann"), ConfigError);
  CHECK(filter_by_name("none").scalar(M_PI) == 1.0);
}

TEST_CASE("gautschi two-step scheme") {
  SUBCASE("Omega = 0 is classical leapfrog") {
    SecondOrderProblem p;
    p.n = 1;
    p.Omega = Matrix::Zero(1, 1);
    p.g = [](const Vector& y) -> Vector { return -y; };
    p.finalize();
    TrigStepperState state{Vector::Constant(1, 0.9), Vector::Constant(1, 1.0)};
    const Vector yn = gautschi_step(p, state, 0.1, filter_by_name("sinc"));
    // y_{n+1} = 2 y_n - y_{n-1} + h^2 g(y_n)
    CHECK(yn(0) == doctest::Approx(2.0 * 1.0 - 0.9 + 0.01 * (-1.0)).epsilon(1e-14));
  }
  SUBCASE("exact two-step recurrence for the pure oscillator") {
    const double omega = 7.0, h = 0.21;
    SecondOrderProblem p = scalar_oscillator(omega);
    const FilterFunction sincf = filter_by_name("sinc");
    // y_n = cos(n h w) satisfies the recurrence identically
    for (int n = 1; n < 40; ++n) {
      TrigStepperState state{Vector::Constant(1, std::cos((n - 1) * h * omega)),
                             Vector::Constant(1, std::cos(n * h * omega))};
      const Vector yn = gautschi_step(p, state, h, sincf);
      CHECK(std::abs(yn(0) - std::cos((n + 1) * h * omega)) < 1e-13);
    }
  }
  SUBCASE("exact recurrence across h*omega in [0, 10]") {
    for (double homega : {0.1, 1.0, 2.5, 5.0, 9.7}) {
      const double h = 0.1, omega = homega / h;
      SecondOrderProblem p = scalar_oscillator(omega);
      TrigStepperState state{Vector::Constant(1, std::cos(-h * omega)),
                             Vector::Constant(1, 1.0)};
      const Vector yn = gautschi_step(p, state, h, filter_by_name("sinc"));
      CHECK(std::abs(yn(0) - std::cos(h * omega)) < 1e-12);
    }
  }
}

TEST_CASE("matrix functions of Omega commute with Omega") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix A(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) A(i, j) = gauss(rng);
  SecondOrderProblem p;
  p.n = 4;
  p.Omega = Matrix(A.transpose() * A);  // spd
  p.g = [](const Vector& y) { return Vector(Vector::Zero(y.size())); };
  p.finalize();
  const Matrix C = p.function_matrix([](double x) { return std::cos(x); }, 0.3);
  CHECK((C * p.Omega - p.Omega * C).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("resonant step: sinc filter cuts the oscillatory-energy growth") {
  const double omega = 50.0;
  OscillatoryHamiltonian osc = fpu_system(3, omega);
  SecondOrderProblem p = osc.as_second_order();
  const int d = osc.dimension();
  const double h = M_PI / omega;  // h*omega = pi, exact resonance
  const long steps = static_cast<long>(std::lround(50.0 / h));

  auto drift_with = [&](const FilterFunction& filter) {
    Vector y = osc.default_state.tail(d);
    Vector v = osc.default_state.head(d);
    auto [y1, v1] = trig_voc_step(p, y, v, h);
    (void)v1;
    TrigStepperState state{y, y1};
    const double I0 = oscillatory_energy(osc, v, y);
    double drift = 0.0;
    for (long k = 1; k < steps; ++k) {
      const Vector yn = gautschi_step(p, state, h, filter);
      if (!yn.allFinite()) return std::numeric_limits<double>::infinity();
      // raw central-difference proxy (identical for both runs)
      const Vector vk = gautschi_velocity_estimate(p, state.y_prev, yn, h, false);
      drift = std::max(drift, std::abs(oscillatory_energy(osc, vk, state.y_curr) - I0));
      state.y_prev = state.y_curr;
      state.y_curr = yn;
    }
    return drift;
  };

  const double filtered = drift_with(filter_by_name("sinc"));
  const double unfiltered = drift_with(filter_by_name("none"));
  CHECK(std::isfinite(filtered));
  CHECK(unfiltered > 100.0 * filtered);  // resonance wrecks the unfiltered run
}
