#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <random>

#include "geomint/matrix_functions.hpp"

using namespace geomint;
using Matrix = Eigen::MatrixXd;

TEST_CASE("scalar helpers") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(std::abs(sinc(M_PI)) < 1e-16);
  CHECK(sinc(1e-6) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gautschi_psi(0.0) == 1.0);
  CHECK(gautschi_psi(2.0) == doctest::Approx(2.0 * (1.0 - std::cos(2.0)) / 4.0).epsilon(1e-14));
}

TEST_CASE("expm agrees with an independent dense exponential") {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 3 + trial;
    Matrix A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = gauss(rng);
    const Matrix ours = expm<double>(A);
    const Matrix reference = A.exp();  // Eigen unsupported, independent code path
    CHECK((ours - reference).cwiseAbs().maxCoeff() <
          1e-12 * reference.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("expm handles large norms via scaling") {
  Matrix A(2, 2);
  A << 0.0, 30.0, -30.0, 0.0;  // rotation by 30 rad
  const Matrix E = expm<double>(A);
  CHECK(E(0, 0) == doctest::Approx(std::cos(30.0)).epsilon(1e-12));
  CHECK(E(0, 1) == doctest::Approx(std::sin(30.0)).epsilon(1e-12));
  CHECK((E.transpose() * E - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("complex expm") {
  Eigen::MatrixXcd A(2, 2);
  A << std::complex<double>(0, 1.0), 0.0, 0.0, std::complex<double>(0, -2.0);
  const Eigen::MatrixXcd E = expm<std::complex<double>>(A);
  CHECK(std::abs(E(0, 0) - std::exp(std::complex<double>(0, 1.0))) < 1e-14);
  CHECK(std::abs(E(1, 1) - std::exp(std::complex<double>(0, -2.0))) < 1e-14);
}

TEST_CASE("phi1") {
  SUBCASE("phi1(0) = I") {
    const Matrix Z = Matrix::Zero(3, 3);
    CHECK((phi1(Z) - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("scalar value e - 1") {
    Matrix M(1, 1);
    M << 1.0;
    CHECK(phi1(M)(0, 0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
  }
  SUBCASE("identity M phi1(M) = e^M - I on random matrices") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 0.8);
    for (int trial = 0; trial < 4; ++trial) {
      const int n = 4;
      Matrix M(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = gauss(rng);
      const Matrix lhs = M * phi1(M);
      const Matrix rhs = expm<double>(M) - Matrix::Identity(n, n);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
    }
  }
  SUBCASE("works for singular M") {
    Matrix M(2, 2);
    M << 0.0, 1.0, 0.0, 0.0;  // nilpotent
    // phi1 = I + M/2 for M^2 = 0
    const Matrix expected = Matrix::Identity(2, 2) + 0.5 * M;
    CHECK((phi1(M) - expected).cwiseAbs().maxCoeff() < 1e-14);
  }
}
