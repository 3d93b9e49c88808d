#ifndef GEOMINT_SCHRODINGER_HPP
#define GEOMINT_SCHRODINGER_HPP

#include <complex>

#include "geomint/types.hpp"

namespace geomint {

using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Periodic spectral collocation grid on [-1, 1) for the semiclassical
/// regime: N = O(1/eps) points, time step h = O(eps^sigma).
struct SemiclassicalGrid {
  int N = 0;
  double eps = 1.0;
  double h = 0.0;
  int sigma = 1;

  void validate() const;
  /// N >= 4/eps resolves the O(1/eps) oscillation; below it is a warning,
  /// not an error.
  bool resolution_ok() const { return N >= 4.0 / eps; }
  Vector points() const;  // x_j = -1 + 2j/N
  /// Wavenumber of FFT bin j: j for j < N/2, j - N otherwise.
  Vector wavenumbers() const;
};

ComplexVector fft(const ComplexVector& u);
ComplexVector ifft(const ComplexVector& u);

/// Spectral derivative of given order: multiply bin k by (i pi k)^order.
ComplexVector spectral_derivative(const SemiclassicalGrid& grid, const ComplexVector& u,
                                  int order);

/// Potential samples with spectral derivatives up to fourth order.
struct PotentialData {
  Vector V, V1, V2, V3, V4;

  static PotentialData from_function(const SemiclassicalGrid& grid,
                                     const std::function<double(double)>& f);
  static PotentialData from_samples(const SemiclassicalGrid& grid, const Vector& samples);
  /// Recompute the derivatives spectrally from V and compare (1e-8).
  void validate(const SemiclassicalGrid& grid) const;
};

/// Closed-form ids: "zero", "cos-pi-x" (cos pi x), "double-well" (cos 2 pi x).
PotentialData potential_by_name(const SemiclassicalGrid& grid, const std::string& name);
/// Plain text file: N lines of real values.
PotentialData potential_from_file(const SemiclassicalGrid& grid, const std::string& path);

/// The printed R3 carries a tau^5 eps^{-3} (d^4 V) term whose size is
/// inconsistent with the claimed O(eps^4); `rescaled` raises that term's
/// eps power to +3 so the term scales as O(eps^4). Both variants are kept.
enum class R3Variant { printed, rescaled };

/// The four splitting operators for sigma = 1, tau = i h. R0 is diagonal, R1
/// a Fourier multiplier, R2 and R3 matrix-free skew-Hermitian combinations of
/// multiplications and spectral derivatives.
struct ZassenhausOperators {
  SemiclassicalGrid grid;
  PotentialData potential;
  R3Variant r3_variant = R3Variant::rescaled;

  std::complex<double> tau() const { return {0.0, grid.h}; }
  /// exp(R0) u: pointwise phase exp(-tau V / (2 eps)).
  ComplexVector exp_R0(const ComplexVector& u) const;
  /// coefficient z of the Fourier multiplier exp(z (i pi k)^2).
  std::complex<double> r1_coefficient() const { return 0.5 * tau() * grid.eps; }
  ComplexVector apply_R2(const ComplexVector& u) const;
  ComplexVector apply_R3(const ComplexVector& u) const;
};

ZassenhausOperators zassenhaus_operators(const SemiclassicalGrid& grid,
                                         const PotentialData& potential,
                                         R3Variant variant = R3Variant::rescaled);

/// ifft(exp(coefficient (i pi k)^2) fft(u)); unitary per mode for imaginary
/// coefficients.
ComplexVector apply_exp_R1(const SemiclassicalGrid& grid, const ComplexVector& u,
                           std::complex<double> coefficient);

/// Arnoldi approximation of e^{Op} u in a k-dimensional Krylov subspace;
/// the standard residual estimate is written to *residual when given.
ComplexVector krylov_exp_apply(
    const std::function<ComplexVector(const ComplexVector&)>& op, const ComplexVector& u,
    int iterations, double* residual = nullptr);

struct ZassenhausOptions {
  int krylov_r2 = 3;
  int krylov_r3 = 2;
  R3Variant r3_variant = R3Variant::rescaled;
};

/// Palindromic product e^{R0} e^{R1} e^{R2} e^{R3} e^{R2} e^{R1} e^{R0}
/// applied to u (innermost exponential once).
ComplexVector zassenhaus_step(const SemiclassicalGrid& grid, const PotentialData& potential,
                              const ComplexVector& u, const ZassenhausOptions& options = {});

/// Dense e^{h(i eps dxx - i/eps V)} via the collocation matrix; N <= 512.
ComplexMatrix reference_propagator(const SemiclassicalGrid& grid,
                                   const PotentialData& potential, double h);

/// Discrete L2 norm with dx = 2/N weight.
double l2_norm(const SemiclassicalGrid& grid, const ComplexVector& u);

/// exp(-((x-center)/width)^2) exp(i momentum x / eps), normalized.
ComplexVector gaussian_wavepacket(const SemiclassicalGrid& grid, double center, double width,
                                  double momentum);

}  // namespace geomint

#endif
