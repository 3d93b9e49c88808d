#include "geomint/registry.hpp"

#include <cmath>

namespace geomint {

Vector flatten(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unflatten(const Vector& v, int rows) {
  const int cols = static_cast<int>(v.size()) / rows;
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

namespace {

double jget(const Json& j, const std::string& key, double fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return j.at(key).get<double>();
}

std::string jget_s(const Json& j, const std::string& key, const std::string& fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return j.at(key).get<std::string>();
}

SolverSettings settings_from(const Json& params) {
  SolverSettings s;
  s.tolerance = jget(params, "tolerance", s.tolerance);
  s.max_iterations = static_cast<int>(jget(params, "max_iterations", s.max_iterations));
  return s;
}

Observer energy_observer(const HamiltonianSystem& ham) {
  return {"energy", [ham](double, const Vector& z) { return ham.energy_z(z); }};
}

SplitProblem kinetic_potential_split(const PartitionedSystem& sys, int dof,
                                     const VectorFieldProblem& full) {
  // z = (p, q): drift moves q with M^{-1} p, kick moves p with -grad V(q)
  const Matrix Minv = sys.mass.llt().solve(Matrix::Identity(dof, dof));
  auto gV = sys.grad_potential;
  SplitProblem split;
  split.full = full;
  FlowPart drift, kick;
  drift.field.dimension = 2 * dof;
  drift.field.rhs = [dof, Minv](double, const Vector& z) {
    Vector out = Vector::Zero(2 * dof);
    out.tail(dof) = Minv * z.head(dof);
    return out;
  };
  drift.flow = [dof, Minv](double, const Vector& z, double h) {
    Vector out = z;
    out.tail(dof) += h * (Minv * z.head(dof));
    return out;
  };
  kick.field.dimension = 2 * dof;
  kick.field.rhs = [dof, gV](double, const Vector& z) {
    Vector out = Vector::Zero(2 * dof);
    out.head(dof) = -gV(z.tail(dof));
    return out;
  };
  kick.flow = [dof, gV](double, const Vector& z, double h) {
    Vector out = z;
    out.head(dof) -= h * gV(z.tail(dof));
    return out;
  };
  split.parts = {drift, kick};
  split.validate();
  return split;
}

ProblemInstance make_harmonic(const Json&) {
  ProblemInstance p;
  p.id = "harmonic";
  p.hamiltonian = harmonic_oscillator();
  p.partitioned = harmonic_partitioned();
  p.field = p.hamiltonian->as_problem();
  p.initial_state.resize(2);
  p.initial_state << 0.0, 1.0;  // (p, q)
  p.observables = {energy_observer(*p.hamiltonian)};
  p.split = kinetic_potential_split(*p.partitioned, 1, p.field);
  Matrix A(2, 2);
  A << 0.0, -1.0, 1.0, 0.0;  // zdot = A z on (p, q)
  p.semilinear = SemilinearProblem{A, [](const Vector& z) { return Vector::Zero(z.size()); }};
  return p;
}

ProblemInstance make_pendulum(const Json&) {
  ProblemInstance p;
  p.id = "pendulum";
  p.hamiltonian = pendulum();
  p.partitioned = pendulum_partitioned();
  p.field = p.hamiltonian->as_problem();
  p.initial_state.resize(2);
  p.initial_state << 0.4, 0.8;  // (p, q)
  p.observables = {energy_observer(*p.hamiltonian)};
  p.split = kinetic_potential_split(*p.partitioned, 1, p.field);
  return p;
}

ProblemInstance make_kepler(const Json& params) {
  const double e = jget(params, "e", 0.6);
  KeplerProblem k = kepler(e);
  ProblemInstance p;
  p.id = "kepler";
  p.hamiltonian = k.hamiltonian;
  p.partitioned = k.partitioned;
  p.field = k.hamiltonian.as_problem();
  p.initial_state = k.initial_state;
  p.default_h = 0.01;
  p.default_steps = 1000;
  p.observables = {energy_observer(k.hamiltonian),
                   {"angular-momentum",
                    [](double, const Vector& z) { return kepler_angular_momentum(z); }}};
  p.split = kinetic_potential_split(*p.partitioned, 2, p.field);
  return p;
}

ProblemInstance make_nbody(const Json&) {
  NBodyProblem nb = nbody();
  ProblemInstance p;
  p.id = "nbody";
  p.hamiltonian = nb.hamiltonian;
  p.partitioned = nb.partitioned;
  p.field = nb.hamiltonian.as_problem();
  p.initial_state = nb.initial_state;
  p.default_h = 0.01;
  p.default_steps = 1000;
  p.observables = {
      energy_observer(nb.hamiltonian),
      {"momentum-x", [nb](double, const Vector& z) { return nbody_linear_momentum(nb, z)(0); }},
      {"momentum-y", [nb](double, const Vector& z) { return nbody_linear_momentum(nb, z)(1); }},
      {"angular-momentum",
       [nb](double, const Vector& z) { return nbody_angular_momentum(nb, z); }}};
  p.split = kinetic_potential_split(*p.partitioned, 2 * nb.bodies, p.field);
  return p;
}

ProblemInstance make_fpu(const Json& params) {
  const int n_pairs = static_cast<int>(jget(params, "n_pairs", 3));
  const double omega = jget(params, "omega", 50.0);
  OscillatoryHamiltonian osc = fpu_system(n_pairs, omega);
  ProblemInstance p;
  p.id = "fpu";
  p.oscillatory = osc;
  p.partitioned = osc.as_partitioned();
  p.hamiltonian = p.partitioned->as_hamiltonian();
  p.second_order = osc.as_second_order();
  p.field = p.hamiltonian->as_problem();
  p.initial_state = osc.default_state;
  p.default_h = 1.0 / omega;
  p.default_steps = static_cast<long>(200.0 * omega);
  const int d = osc.dimension();
  p.observables = {
      {"total-energy",
       [osc, d](double, const Vector& z) { return total_energy(osc, z.head(d), z.tail(d)); }},
      {"oscillatory-energy",
       [osc, d](double, const Vector& z) {
         return oscillatory_energy(osc, z.head(d), z.tail(d));
       }}};
  p.split = kinetic_potential_split(*p.partitioned, d, p.field);
  return p;
}

ProblemInstance make_kahan_family(const std::string& name, const Json& params) {
  std::map<std::string, double> pmap;
  if (params.is_object())
    for (auto it = params.begin(); it != params.end(); ++it)
      if (it.value().is_number()) pmap[it.key()] = it.value().get<double>();
  KahanFamily fam = kahan_family(name, pmap);
  ProblemInstance p;
  p.id = name;
  p.quadratic = fam.field;
  p.field = fam.field.as_problem();
  p.initial_state = fam.default_state;
  p.default_h = 0.05;
  p.default_steps = 1000;
  auto inv = fam.invariant;
  p.observables = {{"invariant", [inv](double, const Vector& x) { return inv(x); }}};
  if (fam.structure) {
    auto H = fam.structure->H;
    p.observables.push_back({"energy", [H](double, const Vector& x) { return H(x); }});
  }
  return p;
}

ProblemInstance make_divfree_example(const Json&) {
  ProblemInstance p;
  p.id = "divfree-example";
  const PolynomialVectorField poly = vp_example_field();
  p.divfree = divergence_free_from_polynomial(poly);
  p.divfree->validate();
  p.field = poly.as_problem();
  p.initial_state.resize(3);
  p.initial_state << 0.3, 0.2, 0.1;
  p.default_h = 0.05;
  p.default_steps = 200;
  return p;
}

ProblemInstance make_isospectral(const Json&) {
  ProblemInstance p;
  p.id = "isospectral";
  Matrix y0(3, 3);
  y0 << 2.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, -1.0;
  LieGroupProblem lie;
  lie.action.kind = GroupAction::Kind::isospectral;
  lie.coefficient = [](double, const Matrix& y) {
    // Toda-style skew coefficient: strictly upper minus strictly lower part
    Matrix B = Matrix::Zero(y.rows(), y.cols());
    for (int i = 0; i < y.rows(); ++i)
      for (int j = i + 1; j < y.cols(); ++j) {
        B(i, j) = y(i, j);
        B(j, i) = -y(j, i);
      }
    return AlgebraElement<double>{B, AlgebraKind::special_orthogonal};
  };
  p.lie_problem = lie;
  p.lie_matrix_rows = 3;
  p.initial_state = flatten(y0);
  p.default_h = 0.05;
  p.default_steps = 200;
  p.field.dimension = 9;
  p.field.autonomous = true;
  p.field.rhs = [lie](double t, const Vector& zf) {
    const Matrix y = unflatten(zf, 3);
    const Matrix B = lie.coefficient(t, y).m;
    return flatten(Matrix(B * y - y * B));  // isospectral: ydot = [B, y]
  };
  p.observables = {
      {"trace", [](double, const Vector& zf) { return unflatten(zf, 3).trace(); }},
      {"trace-sq",
       [](double, const Vector& zf) {
         const Matrix y = unflatten(zf, 3);
         return (y * y).trace();
       }},
      {"symmetry-defect", [](double, const Vector& zf) {
         const Matrix y = unflatten(zf, 3);
         return (y - y.transpose()).cwiseAbs().maxCoeff();
       }}};
  return p;
}

ProblemInstance make_mathieu(const Json& params) {
  const double amp = jget(params, "amplitude", 0.2);
  ProblemInstance p;
  p.id = "mathieu";
  LinearLieProblem lie;
  lie.coefficient = [amp](double t) {
    Matrix a(2, 2);
    a << 0.0, 1.0, -(1.0 + amp * std::cos(t)), 0.0;
    return AlgebraElement<double>{a, AlgebraKind::special_linear};
  };
  p.linear_lie = lie;
  p.lie_matrix_rows = 2;
  p.initial_state = flatten(Matrix::Identity(2, 2));
  p.default_h = 0.05;
  p.default_steps = 200;
  p.field.dimension = 4;
  p.field.autonomous = false;
  p.field.rhs = [lie](double t, const Vector& vf) {
    const Matrix v = unflatten(vf, 2);
    return flatten(Matrix(lie.coefficient(t).m * v));
  };
  p.observables = {{"det", [](double, const Vector& vf) {
                      return unflatten(vf, 2).determinant();
                    }}};
  return p;
}

ProblemInstance make_schrodinger(const Json& params) {
  ProblemInstance p;
  p.id = "schrodinger";
  SemiclassicalGrid grid;
  grid.N = static_cast<int>(jget(params, "N", 256));
  grid.eps = jget(params, "eps", 1.0 / 16.0);
  grid.h = jget(params, "h", grid.eps);
  grid.validate();
  p.grid = grid;
  const std::string pot_file = jget_s(params, "potential_file", "");
  p.potential = pot_file.empty()
                    ? potential_by_name(grid, jget_s(params, "potential", "cos-pi-x"))
                    : potential_from_file(grid, pot_file);
  const ComplexVector u0 = gaussian_wavepacket(grid, jget(params, "center", -0.3),
                                               jget(params, "width", 0.25),
                                               jget(params, "momentum", 0.4));
  p.initial_state.resize(2 * grid.N);
  p.initial_state << u0.real(), u0.imag();
  p.default_h = grid.h;
  p.default_steps = 16;
  const int N = grid.N;
  const auto pot = *p.potential;
  p.field.dimension = 2 * N;
  p.field.rhs = [grid, pot, N](double, const Vector& zf) {
    ComplexVector u(N);
    u.real() = zf.head(N);
    u.imag() = zf.tail(N);
    const ComplexVector du =
        std::complex<double>(0, grid.eps) * spectral_derivative(grid, u, 2) -
        std::complex<double>(0, 1.0 / grid.eps) *
            pot.V.cast<std::complex<double>>().cwiseProduct(u);
    Vector out(2 * N);
    out << du.real(), du.imag();
    return out;
  };
  p.observables = {
      {"norm",
       [grid, N](double, const Vector& zf) {
         ComplexVector u(N);
         u.real() = zf.head(N);
         u.imag() = zf.tail(N);
         return l2_norm(grid, u);
       }},
      {"energy", [grid, pot, N](double, const Vector& zf) {
         ComplexVector u(N);
         u.real() = zf.head(N);
         u.imag() = zf.tail(N);
         const ComplexVector Hu =
             -grid.eps * grid.eps * spectral_derivative(grid, u, 2) +
             pot.V.cast<std::complex<double>>().cwiseProduct(u);
         const double nrm = u.squaredNorm();
         return nrm == 0.0 ? 0.0 : u.dot(Hu).real() / nrm;
       }}};
  return p;
}

}  // namespace

const std::vector<RegistryEntry>& problem_registry() {
  static const std::vector<RegistryEntry> entries = {
      {"harmonic", "1D harmonic oscillator, states (p, q)", ""},
      {"pendulum", "planar pendulum H = p^2/2 - cos q", ""},
      {"kepler", "planar Kepler orbit, unit semi-major axis", "e (eccentricity, default 0.6)"},
      {"nbody", "planar three-body system, normalized units", ""},
      {"fpu", "modified Fermi-Pasta-Ulam chain", "n_pairs (3), omega (50)"},
      {"quadratic-hamiltonian-2d", "2D canonical quadratic field, cubic energy",
       "a..i coefficients"},
      {"suslov-2d", "2D Suslov-type field l(x) J grad H", "la, lb, lc, d..i"},
      {"nahm-octahedral", "reduced Nahm flow, octahedral symmetry", ""},
      {"nahm-icosahedral", "reduced Nahm flow, icosahedral symmetry", ""},
      {"divfree-example", "worked divergence-free 3D polynomial field", ""},
      {"isospectral", "isospectral matrix flow on symmetric 3x3 matrices", ""},
      {"mathieu", "Mathieu-type linear system on SL(2)", "amplitude (0.2)"},
      {"schrodinger", "semiclassical 1D Schrodinger equation",
       "N (256), eps (1/16), h (eps), potential (cos-pi-x), potential_file, center, width, momentum"},
  };
  return entries;
}

ProblemInstance make_problem(const std::string& id, const Json& params) {
  if (id == "harmonic") return make_harmonic(params);
  if (id == "pendulum") return make_pendulum(params);
  if (id == "kepler") return make_kepler(params);
  if (id == "nbody") return make_nbody(params);
  if (id == "fpu") return make_fpu(params);
  if (id == "quadratic-hamiltonian-2d" || id == "suslov-2d" || id == "nahm-octahedral" ||
      id == "nahm-icosahedral")
    return make_kahan_family(id, params);
  if (id == "divfree-example") return make_divfree_example(params);
  if (id == "isospectral") return make_isospectral(params);
  if (id == "mathieu") return make_mathieu(params);
  if (id == "schrodinger") return make_schrodinger(params);
  throw ConfigError("unknown problem '" + id + "'");
}

const std::vector<RegistryEntry>& integrator_registry() {
  static const std::vector<RegistryEntry> entries = {
      {"explicit-euler", "first-order explicit (negative control)", ""},
      {"rk4", "classical fourth-order Runge-Kutta (non-symplectic control)", ""},
      {"implicit-midpoint", "symplectic one-stage collocation", "tolerance, max_iterations"},
      {"gauss-legendre", "Gauss-Legendre collocation, order 2s", "s (1|2|3), tolerance"},
      {"stormer-verlet", "kick-drift-kick leapfrog", ""},
      {"strang", "Strang splitting over the problem's parts", ""},
      {"yoshida4", "Yoshida-boosted Strang, order 4", ""},
      {"yoshida6", "doubly boosted Strang, order 6", ""},
      {"exponential-euler", "exponential Euler on ydot = Ay + b(y)", ""},
      {"trig-voc", "one-step trigonometric variation of constants", "quadrature (4)"},
      {"gautschi", "two-step Gautschi-type trigonometric integrator",
       "filter (sinc|sinc2|none)"},
      {"avf", "average vector field, energy-preserving", "quadrature (auto)"},
      {"simpson-rk", "Simpson-rule average vector field", "tolerance"},
      {"discrete-gradient", "skew-gradient integrator",
       "gradient (itoh-abe|avf), skew (midpoint|left)"},
      {"two-integral", "discrete-gradient scheme preserving I and J",
       "gradient (itoh-abe|avf)"},
      {"kahan", "Kahan's linearly implicit method for quadratic fields", ""},
      {"kahan-rk", "Runge-Kutta form of Kahan's method", "tolerance"},
      {"vp-splitting", "volume-preserving two-part splitting", "tolerance"},
      {"shang-quispel", "triangular volume-preserving integrator (worked example)", ""},
      {"rkmk3", "Runge-Kutta-Munthe-Kaas order 3 on a group action", ""},
      {"magnus4", "fourth-order Gauss-Magnus for linear Lie-group equations", ""},
      {"zassenhaus", "symmetric Zassenhaus splitting for the semiclassical Schrodinger equation",
       "krylov_r2 (3), krylov_r3 (2), r3_variant (rescaled|printed)"},
  };
  return entries;
}

const std::vector<RegistryEntry>& diagnostic_registry() {
  static const std::vector<RegistryEntry> entries = {
      {"symplecticity-defect", "max-norm of DPhi^T J DPhi - J (FD Jacobian)", ""},
      {"volume-defect", "| |det DPhi| - 1 | (FD Jacobian)", ""},
      {"time-symmetry-defect", "||Phi_{-h}(Phi_h(x)) - x||_inf", ""},
  };
  return entries;
}

StepMap make_integrator(const std::string& id, const Json& params,
                        const ProblemInstance& problem) {
  const SolverSettings settings = settings_from(params);
  const VectorFieldProblem field = problem.field;

  if (id == "explicit-euler")
    return [field](double t, const Vector& x, double h) {
      return explicit_euler_step(field, t, x, h);
    };
  if (id == "rk4")
    return [field](double t, const Vector& x, double h) { return rk4_step(field, t, x, h); };
  if (id == "implicit-midpoint")
    return [field, settings](double t, const Vector& x, double h) {
      return implicit_midpoint_step(field, t, x, h, settings);
    };
  if (id == "gauss-legendre") {
    const int s = static_cast<int>(jget(params, "s", 2));
    return [field, settings, s](double t, const Vector& x, double h) {
      return gauss_legendre_step(s, field, t, x, h, settings);
    };
  }
  if (id == "stormer-verlet") {
    if (!problem.partitioned)
      throw ConfigError("integrator 'stormer-verlet' needs a partitioned problem");
    const PartitionedSystem sys = *problem.partitioned;
    return [sys](double, const Vector& z, double h) {
      return stormer_verlet_step_z(sys, z, h);
    };
  }
  if (id == "strang" || id == "yoshida4" || id == "yoshida6") {
    if (!problem.split)
      throw ConfigError("integrator '" + id + "' needs a split problem");
    CompositionScheme scheme = strang_scheme();
    if (id == "yoshida4") scheme = yoshida_boost(scheme);
    if (id == "yoshida6") scheme = yoshida_boost(yoshida_boost(scheme));
    return make_composition_step(scheme, *problem.split);
  }
  if (id == "exponential-euler") {
    if (!problem.semilinear)
      throw ConfigError("integrator 'exponential-euler' needs a semilinear problem");
    const SemilinearProblem sys = *problem.semilinear;
    return [sys](double, const Vector& y, double h) {
      return exponential_euler_step(sys, y, h);
    };
  }
  if (id == "trig-voc") {
    if (!problem.second_order)
      throw ConfigError("integrator 'trig-voc' needs a second-order problem");
    const SecondOrderProblem sys = *problem.second_order;
    const int q = static_cast<int>(jget(params, "quadrature", 4));
    const int n = sys.n;
    return [sys, q, n](double, const Vector& z, double h) {
      auto [y, v] = trig_voc_step(sys, z.tail(n), z.head(n), h, q);
      Vector out(2 * n);
      out << v, y;
      return out;
    };
  }
  if (id == "gautschi") {
    if (!problem.second_order)
      throw ConfigError("integrator 'gautschi' needs a second-order problem");
    const SecondOrderProblem sys = *problem.second_order;
    const FilterFunction filter = filter_by_name(jget_s(params, "filter", "sinc"));
    const int n = sys.n;
    // Two-step scheme in y only. The closure keeps a three-point window
    // (y_{n-1}, y_n, y_{n+1}) so the returned state carries the
    // sinc-corrected central-difference velocity centered on the returned
    // position.
    struct Window {
      Vector a, b, c;  // y_{n-1}, y_n, y_{n+1}
      double h = 0.0;
      bool ready = false;
    };
    auto win = std::make_shared<Window>();
    return [sys, filter, n, win](double, const Vector& z, double h) {
      const Vector y_in = z.tail(n);
      const bool fresh = !win->ready || win->h != h ||
                         (win->b - y_in).lpNorm<Eigen::Infinity>() != 0.0;
      if (fresh) {
        auto [y1, v1] = trig_voc_step(sys, y_in, z.head(n), h, 4);
        (void)v1;
        win->a = y_in;
        win->b = y1;
        win->c = gautschi_step(sys, TrigStepperState{win->a, win->b}, h, filter);
        win->h = h;
        win->ready = true;
      } else {
        const Vector y_next = gautschi_step(sys, TrigStepperState{win->b, win->c}, h, filter);
        win->a = win->b;
        win->b = win->c;
        win->c = y_next;
      }
      Vector out(2 * n);
      out << gautschi_velocity_estimate(sys, win->a, win->c, h, true), win->b;
      return out;
    };
  }
  if (id == "avf") {
    const int q = static_cast<int>(jget(params, "quadrature", 0));
    return [field, settings, q](double, const Vector& x, double h) {
      return avf_step(field, x, h, settings, q);
    };
  }
  if (id == "simpson-rk")
    return [field, settings](double, const Vector& x, double h) {
      return simpson_rk_step(field, x, h, settings);
    };
  if (id == "discrete-gradient" || id == "two-integral") {
    if (!problem.first_integral)
      throw ConfigError("integrator '" + id + "' needs a first-integral problem");
    const FirstIntegralSystem sys = *problem.first_integral;
    DiscreteGradient grad;
    const std::string gname = jget_s(params, "gradient", "itoh-abe");
    grad.kind = gname == "avf" ? DiscreteGradientKind::avf : DiscreteGradientKind::itoh_abe;
    grad.quadrature = static_cast<int>(jget(params, "quadrature", 8));
    if (id == "two-integral")
      return [sys, settings, grad](double, const Vector& x, double h) {
        return two_integral_step(sys, x, h, settings, grad);
      };
    SkewApproximation skew;
    skew.kind = jget_s(params, "skew", "midpoint") == "left" ? SkewApproximationKind::left
                                                             : SkewApproximationKind::midpoint;
    return [sys, settings, grad, skew](double, const Vector& x, double h) {
      return discrete_gradient_step(sys, grad, skew, x, h, settings);
    };
  }
  if (id == "kahan") {
    if (!problem.quadratic)
      throw ConfigError("integrator 'kahan' needs a quadratic vector field");
    const QuadraticVectorField f = *problem.quadratic;
    return [f](double, const Vector& x, double h) { return kahan_step(f, x, h); };
  }
  if (id == "kahan-rk") {
    if (!problem.quadratic)
      throw ConfigError("integrator 'kahan-rk' needs a quadratic vector field");
    const QuadraticVectorField f = *problem.quadratic;
    return [f, settings](double, const Vector& x, double h) {
      return kahan_rk_form_step(f, x, h, settings);
    };
  }
  if (id == "vp-splitting") {
    if (!problem.divfree)
      throw ConfigError("integrator 'vp-splitting' needs a divergence-free 3D problem");
    const DivergenceFree3D f = *problem.divfree;
    return [f, settings](double, const Vector& x, double h) {
      return vp_splitting_step(f, x, h, settings);
    };
  }
  if (id == "shang-quispel") {
    if (problem.id != "divfree-example")
      throw ConfigError("integrator 'shang-quispel' is defined for the divfree-example problem");
    return [](double, const Vector& x, double h) {
      return shang_quispel_example_step(x, h);
    };
  }
  if (id == "rkmk3") {
    if (!problem.lie_problem)
      throw ConfigError("integrator 'rkmk3' needs a Lie-group problem");
    const LieGroupProblem lie = *problem.lie_problem;
    const int rows = problem.lie_matrix_rows;
    return [lie, rows](double t, const Vector& zf, double h) {
      return flatten(rkmk3_step(lie, unflatten(zf, rows), t, h));
    };
  }
  if (id == "magnus4") {
    if (!problem.linear_lie)
      throw ConfigError("integrator 'magnus4' needs a linear Lie-group problem");
    const LinearLieProblem lie = *problem.linear_lie;
    const int rows = problem.lie_matrix_rows;
    return [lie, rows](double t, const Vector& vf, double h) {
      GroupElement<double> v{unflatten(vf, rows), GroupKind::general_linear};
      return flatten(magnus4_step(lie, v, t, h).m);
    };
  }
  if (id == "zassenhaus") {
    if (!problem.grid || !problem.potential)
      throw ConfigError("integrator 'zassenhaus' needs a Schrodinger problem");
    const SemiclassicalGrid grid = *problem.grid;
    const PotentialData pot = *problem.potential;
    ZassenhausOptions opts;
    opts.krylov_r2 = static_cast<int>(jget(params, "krylov_r2", 3));
    opts.krylov_r3 = static_cast<int>(jget(params, "krylov_r3", 2));
    opts.r3_variant = jget_s(params, "r3_variant", "rescaled") == "printed"
                          ? R3Variant::printed
                          : R3Variant::rescaled;
    const int N = grid.N;
    return [grid, pot, opts, N](double, const Vector& zf, double h) {
      SemiclassicalGrid g = grid;
      g.h = h;
      ComplexVector u(N);
      u.real() = zf.head(N);
      u.imag() = zf.tail(N);
      const ComplexVector w = zassenhaus_step(g, pot, u, opts);
      Vector out(2 * N);
      out << w.real(), w.imag();
      return out;
    };
  }
  throw ConfigError("unknown integrator '" + id + "'");
}

Diagnostic make_diagnostic(const std::string& id) {
  if (id == "symplecticity-defect")
    return [](const StepMap& step, double t, const Vector& x, double h) {
      return symplecticity_defect(step, t, x, h, 1e-5);
    };
  if (id == "volume-defect")
    return [](const StepMap& step, double t, const Vector& x, double h) {
      return volume_defect(step, t, x, h, 1e-5);
    };
  if (id == "time-symmetry-defect")
    return [](const StepMap& step, double t, const Vector& x, double h) {
      return time_symmetry_defect(step, t, x, h);
    };
  throw ConfigError("unknown diagnostic '" + id + "'");
}

}  // namespace geomint
