#include "geomint/schrodinger.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <fstream>

#include "geomint/matrix_functions.hpp"

namespace geomint {

void SemiclassicalGrid::validate() const {
  if (N < 4 || (N & (N - 1)) != 0)
    throw ConfigError("SemiclassicalGrid: N must be a power of two >= 4");
  if (!(eps > 0.0 && eps <= 1.0))
    throw ConfigError("SemiclassicalGrid: eps must lie in (0, 1]");
}

Vector SemiclassicalGrid::points() const {
  Vector x(N);
  for (int j = 0; j < N; ++j) x(j) = -1.0 + 2.0 * j / N;
  return x;
}

Vector SemiclassicalGrid::wavenumbers() const {
  Vector k(N);
  for (int j = 0; j < N; ++j) k(j) = (j < N / 2) ? j : j - N;
  return k;
}

ComplexVector fft(const ComplexVector& u) {
  Eigen::FFT<double> engine;
  ComplexVector out(u.size());
  engine.fwd(out, u);
  return out;
}

ComplexVector ifft(const ComplexVector& u) {
  Eigen::FFT<double> engine;
  ComplexVector out(u.size());
  engine.inv(out, u);
  return out;
}

ComplexVector spectral_derivative(const SemiclassicalGrid& grid, const ComplexVector& u,
                                  int order) {
  const Vector k = grid.wavenumbers();
  ComplexVector c = fft(u);
  for (int j = 0; j < grid.N; ++j)
    c(j) *= std::pow(std::complex<double>(0.0, M_PI * k(j)), order);
  return ifft(c);
}

namespace {

ComplexVector mul(const Vector& a, const ComplexVector& u) {
  return a.cast<std::complex<double>>().cwiseProduct(u);
}

}  // namespace

PotentialData PotentialData::from_samples(const SemiclassicalGrid& grid,
                                          const Vector& samples) {
  if (samples.size() != grid.N)
    throw ConfigError("PotentialData: sample count differs from grid size");
  PotentialData p;
  p.V = samples;
  const ComplexVector vc = samples.cast<std::complex<double>>();
  p.V1 = spectral_derivative(grid, vc, 1).real();
  p.V2 = spectral_derivative(grid, vc, 2).real();
  p.V3 = spectral_derivative(grid, vc, 3).real();
  p.V4 = spectral_derivative(grid, vc, 4).real();
  return p;
}

PotentialData PotentialData::from_function(const SemiclassicalGrid& grid,
                                           const std::function<double(double)>& f) {
  const Vector x = grid.points();
  Vector v(grid.N);
  for (int j = 0; j < grid.N; ++j) v(j) = f(x(j));
  return from_samples(grid, v);
}

void PotentialData::validate(const SemiclassicalGrid& grid) const {
  const PotentialData ref = from_samples(grid, V);
  const double scale = std::max(1.0, V.lpNorm<Eigen::Infinity>());
  if ((ref.V1 - V1).lpNorm<Eigen::Infinity>() > 1e-8 * scale * M_PI * grid.N ||
      (ref.V4 - V4).lpNorm<Eigen::Infinity>() >
          1e-8 * scale * std::pow(M_PI * grid.N, 4))
    throw ConfigError(
        "PotentialData: derivatives inconsistent with spectral differentiation");
}

PotentialData potential_by_name(const SemiclassicalGrid& grid, const std::string& name) {
  if (name == "zero")
    return PotentialData::from_function(grid, [](double) { return 0.0; });
  if (name == "cos-pi-x")
    return PotentialData::from_function(grid, [](double x) { return std::cos(M_PI * x); });
  if (name == "double-well")
    return PotentialData::from_function(grid,
                                        [](double x) { return std::cos(2.0 * M_PI * x); });
  throw ConfigError("potential_by_name: unknown potential '" + name + "'");
}

PotentialData potential_from_file(const SemiclassicalGrid& grid, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("potential_from_file: cannot open " + path);
  Vector v(grid.N);
  for (int j = 0; j < grid.N; ++j)
    if (!(in >> v(j)))
      throw ConfigError("potential_from_file: expected " + std::to_string(grid.N) +
                        " values in " + path);
  return PotentialData::from_samples(grid, v);
}

ComplexVector ZassenhausOperators::exp_R0(const ComplexVector& u) const {
  const std::complex<double> factor = -0.5 * tau() / grid.eps;
  ComplexVector out(u.size());
  for (int j = 0; j < grid.N; ++j) out(j) = std::exp(factor * potential.V(j)) * u(j);
  return out;
}

ComplexVector ZassenhausOperators::apply_R2(const ComplexVector& u) const {
  const std::complex<double> t3 = tau() * tau() * tau();
  const double eps = grid.eps;
  const Vector v1sq = potential.V1.array().square();
  ComplexVector out = (t3 / (24.0 * eps)) * mul(v1sq, u);
  const ComplexVector uxx = spectral_derivative(grid, u, 2);
  const ComplexVector sym =
      mul(potential.V2, uxx) + spectral_derivative(grid, mul(potential.V2, u), 2);
  out += (t3 * eps / 12.0) * sym;
  return out;
}

ComplexVector ZassenhausOperators::apply_R3(const ComplexVector& u) const {
  const std::complex<double> t3 = tau() * tau() * tau();
  const std::complex<double> t5 = t3 * tau() * tau();
  const double eps = grid.eps;

  const Vector v2v1sq = (potential.V2.array() * potential.V1.array().square()).matrix();
  ComplexVector out = -(t5 / (120.0 * eps)) * mul(v2v1sq, u);
  out += -(t3 * eps / 24.0) * mul(potential.V4, u);

  const ComplexVector uxx = spectral_derivative(grid, u, 2);
  const Vector v2sq = potential.V2.array().square();
  const Vector v3v1 = (potential.V3.array() * potential.V1.array()).matrix();
  ComplexVector bracket =
      7.0 * (mul(v2sq, uxx) + spectral_derivative(grid, mul(v2sq, u), 2));
  bracket += mul(v3v1, uxx) + spectral_derivative(grid, mul(v3v1, u), 2);
  out += (t5 * eps / 240.0) * bracket;

  const double eps_power =
      r3_variant == R3Variant::printed ? std::pow(eps, -3) : std::pow(eps, 3);
  const ComplexVector uxxxx = spectral_derivative(grid, u, 4);
  const ComplexVector quartic =
      mul(potential.V4, uxxxx) + spectral_derivative(grid, mul(potential.V4, u), 4);
  out += (t5 * eps_power / 120.0) * quartic;
  return out;
}

ZassenhausOperators zassenhaus_operators(const SemiclassicalGrid& grid,
                                         const PotentialData& potential, R3Variant variant) {
  grid.validate();
  ZassenhausOperators ops;
  ops.grid = grid;
  ops.potential = potential;
  ops.r3_variant = variant;
  return ops;
}

ComplexVector apply_exp_R1(const SemiclassicalGrid& grid, const ComplexVector& u,
                           std::complex<double> coefficient) {
  const Vector k = grid.wavenumbers();
  ComplexVector c = fft(u);
  for (int j = 0; j < grid.N; ++j) {
    const std::complex<double> ik(0.0, M_PI * k(j));
    c(j) *= std::exp(coefficient * ik * ik);
  }
  return ifft(c);
}

ComplexVector krylov_exp_apply(
    const std::function<ComplexVector(const ComplexVector&)>& op, const ComplexVector& u,
    int iterations, double* residual) {
  if (iterations < 1) throw ConfigError("krylov_exp_apply: iterations must be >= 1");
  const double beta = u.norm();
  if (beta == 0.0) {
    if (residual) *residual = 0.0;
    return u;
  }
  const Eigen::Index n = u.size();
  const int m = std::min<int>(iterations, static_cast<int>(n));
  std::vector<ComplexVector> V;
  V.reserve(m + 1);
  V.push_back(u / beta);
  ComplexMatrix H = ComplexMatrix::Zero(m + 1, m);
  int k = m;
  bool breakdown = false;
  for (int j = 0; j < m; ++j) {
    ComplexVector w = op(V[j]);
    for (int i = 0; i <= j; ++i) {  // modified Gram-Schmidt
      H(i, j) = V[i].dot(w);
      w -= H(i, j) * V[i];
    }
    // one re-orthogonalization pass keeps the small basis clean
    for (int i = 0; i <= j; ++i) {
      const std::complex<double> corr = V[i].dot(w);
      H(i, j) += corr;
      w -= corr * V[i];
    }
    H(j + 1, j) = w.norm();
    if (std::abs(H(j + 1, j)) < 1e-14 * std::max(1.0, beta)) {
      k = j + 1;  // lucky breakdown: the subspace is invariant, result exact
      breakdown = true;
      break;
    }
    if (j + 1 < m) V.push_back(w / H(j + 1, j));
  }
  const ComplexMatrix Hk = H.topLeftCorner(k, k);
  const ComplexMatrix E = expm<std::complex<double>>(Hk);
  ComplexVector y = ComplexVector::Zero(n);
  for (int i = 0; i < k; ++i) y += (beta * E(i, 0)) * V[i];
  if (residual)
    *residual = breakdown ? 0.0 : std::abs(H(k, k - 1)) * std::abs(E(k - 1, 0)) * beta;
  return y;
}

ComplexVector zassenhaus_step(const SemiclassicalGrid& grid, const PotentialData& potential,
                              const ComplexVector& u, const ZassenhausOptions& options) {
  const ZassenhausOperators ops = zassenhaus_operators(grid, potential, options.r3_variant);
  auto r2 = [&ops](const ComplexVector& w) { return ops.apply_R2(w); };
  auto r3 = [&ops](const ComplexVector& w) { return ops.apply_R3(w); };
  ComplexVector w = ops.exp_R0(u);
  w = apply_exp_R1(grid, w, ops.r1_coefficient());
  w = krylov_exp_apply(r2, w, options.krylov_r2);
  w = krylov_exp_apply(r3, w, options.krylov_r3);
  w = krylov_exp_apply(r2, w, options.krylov_r2);
  w = apply_exp_R1(grid, w, ops.r1_coefficient());
  return ops.exp_R0(w);
}

ComplexMatrix reference_propagator(const SemiclassicalGrid& grid,
                                   const PotentialData& potential, double h) {
  if (grid.N > 512)
    throw ConfigError("reference_propagator: dense reference limited to N <= 512");
  const int N = grid.N;
  ComplexMatrix L(N, N);
  const std::complex<double> i_eps(0.0, grid.eps);
  const std::complex<double> i_inv_eps(0.0, 1.0 / grid.eps);
  for (int j = 0; j < N; ++j) {
    ComplexVector e = ComplexVector::Zero(N);
    e(j) = 1.0;
    L.col(j) = i_eps * spectral_derivative(grid, e, 2);
    L(j, j) -= i_inv_eps * potential.V(j);
  }
  return expm<std::complex<double>>(ComplexMatrix(h * L));
}

double l2_norm(const SemiclassicalGrid& grid, const ComplexVector& u) {
  return std::sqrt(u.squaredNorm() * 2.0 / grid.N);
}

ComplexVector gaussian_wavepacket(const SemiclassicalGrid& grid, double center, double width,
                                  double momentum) {
  const Vector x = grid.points();
  ComplexVector u(grid.N);
  for (int j = 0; j < grid.N; ++j) {
    const double dx = x(j) - center;
    const std::complex<double> phase(0.0, momentum * x(j) / grid.eps);
    u(j) = std::exp(-dx * dx / (width * width)) * std::exp(phase);
  }
  return u / l2_norm(grid, u);
}

}  // namespace geomint
