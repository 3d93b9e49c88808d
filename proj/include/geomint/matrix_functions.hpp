#ifndef GEOMINT_MATRIX_FUNCTIONS_HPP
#define GEOMINT_MATRIX_FUNCTIONS_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>

namespace geomint {

/// sin(x)/x with the removable singularity evaluated by series.
inline double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

/// 2(1-cos x)/x^2 == sinc(x/2)^2; equals 1 at x = 0.
inline double gautschi_psi(double x) {
  const double s = sinc(0.5 * x);
  return s * s;
}

/// Matrix exponential by scaling-and-squaring with the degree-13 diagonal
/// Pade approximant. Works for real and complex square matrices.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> expm(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& A) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = A.rows();
  static const double b[14] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};
  const double theta13 = 5.371920351148152;
  const double norm = A.cwiseAbs().colwise().sum().maxCoeff();  // 1-norm
  int squarings = 0;
  Mat As = A;
  if (norm > theta13) {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / theta13))));
    As /= Scalar(std::ldexp(1.0, squarings));
  }
  const Mat I = Mat::Identity(n, n);
  const Mat A2 = As * As;
  const Mat A4 = A2 * A2;
  const Mat A6 = A2 * A4;
  const Mat U = As * (A6 * (Scalar(b[13]) * A6 + Scalar(b[11]) * A4 + Scalar(b[9]) * A2) +
                      Scalar(b[7]) * A6 + Scalar(b[5]) * A4 + Scalar(b[3]) * A2 +
                      Scalar(b[1]) * I);
  const Mat V = A6 * (Scalar(b[12]) * A6 + Scalar(b[10]) * A4 + Scalar(b[8]) * A2) +
                Scalar(b[6]) * A6 + Scalar(b[4]) * A4 + Scalar(b[2]) * A2 + Scalar(b[0]) * I;
  Mat E = (V - U).partialPivLu().solve(V + U);
  for (int s = 0; s < squarings; ++s) E = E * E;
  return E;
}

/// phi1(M) = sum_{k>=0} M^k/(k+1)!, i.e. M^{-1}(e^M - I) continued through
/// singular M. Evaluated as the top-right block of exp([[M, I], [0, 0]]).
Eigen::MatrixXd phi1(const Eigen::MatrixXd& M);

}  // namespace geomint

#endif
