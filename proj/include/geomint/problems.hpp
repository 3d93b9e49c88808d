#ifndef GEOMINT_PROBLEMS_HPP
#define GEOMINT_PROBLEMS_HPP

#include <map>
#include <optional>

#include "geomint/exponential.hpp"
#include "geomint/kahan.hpp"
#include "geomint/symplectic.hpp"

namespace geomint {

/// H = 1/2 (p^2 + q^2), d = 1.
HamiltonianSystem harmonic_oscillator();
PartitionedSystem harmonic_partitioned();

/// H = 1/2 p^2 - cos q, d = 1.
HamiltonianSystem pendulum();
PartitionedSystem pendulum_partitioned();

/// Planar Kepler problem in normalized units (G = M = 1, semi-major axis 1,
/// period 2 pi). States are packed z = (p, q).
struct KeplerProblem {
  HamiltonianSystem hamiltonian;
  PartitionedSystem partitioned;
  Vector initial_state;
  double period = 2.0 * M_PI;
};
KeplerProblem kepler(double eccentricity);

/// q1 p2 - q2 p1 on z = (p, q).
double kepler_angular_momentum(const Vector& z);

struct NBodyConfig {
  std::vector<double> masses;
  std::vector<Vector> positions;  // planar, 2 components each
  std::vector<Vector> momenta;
  double G = 1.0;
};
NBodyConfig default_three_body();

struct NBodyProblem {
  int bodies = 0;
  NBodyConfig config;
  HamiltonianSystem hamiltonian;
  PartitionedSystem partitioned;
  Vector initial_state;  // z = (p, q), bodies*2 momenta then bodies*2 positions
};
NBodyProblem nbody(const NBodyConfig& config = default_three_body());

Vector nbody_linear_momentum(const NBodyProblem& problem, const Vector& z);
double nbody_angular_momentum(const NBodyProblem& problem, const Vector& z);

/// Slow block q0 plus fast blocks with frequencies omega_j >> 1:
/// H = 1/2||p||^2 + 1/2||Omega q||^2 + U(q), Omega = blockdiag(0, omega I).
struct OscillatoryHamiltonian {
  int n_slow = 0;
  std::vector<std::pair<int, double>> fast_blocks;  // (size, omega)
  std::function<double(const Vector& q)> U;
  std::function<Vector(const Vector& q)> grad_U;
  Vector default_state;  // z = (p, q)

  int dimension() const;
  Vector omega_diagonal() const;
  SecondOrderProblem as_second_order() const;
  PartitionedSystem as_partitioned() const;
};

double total_energy(const OscillatoryHamiltonian& osc, const Vector& p, const Vector& q);
double oscillatory_energy(const OscillatoryHamiltonian& osc, const Vector& p, const Vector& q);

/// |sin(m h omega / 2)| >= c sqrt(h) for m = 1..N.
bool nonresonance_ok(double h, double omega, int N, double c);

/// Modified Fermi-Pasta-Ulam chain: n_pairs stiff harmonic springs of
/// frequency omega alternating with quartic soft springs, in the usual
/// rotated variables (slow block first). The quartic coefficients are the
/// benchmark convention documented in the README.
OscillatoryHamiltonian fpu_system(int n_pairs, double omega);

/// Integrable 2D quadratic families for Kahan's method. The invariant is a
/// first integral of the continuous flow; `structure` is present only when a
/// constant-skew cubic-Hamiltonian form exists.
struct KahanFamily {
  std::string name;
  QuadraticVectorField field;
  std::function<double(const Vector&)> invariant;
  std::function<Vector(const Vector&)> invariant_grad;
  std::optional<CubicHamiltonianStructure> structure;
  Vector default_state;
};

/// Names: quadratic-hamiltonian-2d, suslov-2d, nahm-octahedral,
/// nahm-icosahedral. Parameters (a..i etc.) override built-in defaults.
KahanFamily kahan_family(const std::string& name,
                         const std::map<std::string, double>& params = {});

}  // namespace geomint

#endif
