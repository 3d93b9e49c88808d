#include "geomint/matrix_functions.hpp"

namespace geomint {

Eigen::MatrixXd phi1(const Eigen::MatrixXd& M) {
  const Eigen::Index n = M.rows();
  Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  aug.topLeftCorner(n, n) = M;
  aug.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd E = expm<double>(aug);
  return E.topRightCorner(n, n);
}

}  // namespace geomint
