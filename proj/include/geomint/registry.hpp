#ifndef GEOMINT_REGISTRY_HPP
#define GEOMINT_REGISTRY_HPP

#include <optional>

#include <json.hpp>

#include "geomint/composition.hpp"
#include "geomint/integral_preserving.hpp"
#include "geomint/liegroup.hpp"
#include "geomint/problems.hpp"
#include "geomint/schrodinger.hpp"
#include "geomint/volume.hpp"

namespace geomint {

using Json = nlohmann::json;

/// A benchmark problem instantiated for the harness: a flattened vector state,
/// named observables, and whatever structural facets the integrators need.
struct ProblemInstance {
  std::string id;
  VectorFieldProblem field;
  Vector initial_state;
  double t0 = 0.0;
  std::vector<Observer> observables;
  double default_h = 0.1;
  long default_steps = 100;

  std::optional<HamiltonianSystem> hamiltonian;
  std::optional<PartitionedSystem> partitioned;
  std::optional<SemilinearProblem> semilinear;
  std::optional<SecondOrderProblem> second_order;
  std::optional<OscillatoryHamiltonian> oscillatory;
  std::optional<SplitProblem> split;
  std::optional<FirstIntegralSystem> first_integral;
  std::optional<QuadraticVectorField> quadratic;
  std::optional<DivergenceFree3D> divfree;
  std::optional<LieGroupProblem> lie_problem;   // matrix states flattened column-major
  int lie_matrix_rows = 0;
  std::optional<LinearLieProblem> linear_lie;
  std::optional<SemiclassicalGrid> grid;        // wave states packed [Re(u); Im(u)]
  std::optional<PotentialData> potential;
};

struct RegistryEntry {
  std::string id;
  std::string summary;
  std::string params_help;
};

const std::vector<RegistryEntry>& problem_registry();
const std::vector<RegistryEntry>& integrator_registry();
const std::vector<RegistryEntry>& diagnostic_registry();

/// Instantiate a registered problem; unknown ids throw ConfigError.
ProblemInstance make_problem(const std::string& id, const Json& params = Json::object());

/// Build a one-step map for the given problem; incompatible or unknown
/// pairings throw ConfigError.
StepMap make_integrator(const std::string& id, const Json& params,
                        const ProblemInstance& problem);

/// Diagnostic evaluated along a run: (step map, t, x, h) -> scalar.
using Diagnostic = std::function<double(const StepMap&, double, const Vector&, double)>;
Diagnostic make_diagnostic(const std::string& id);

/// Matrix <-> flattened-vector helpers for Lie-group states.
Vector flatten(const Matrix& m);
Matrix unflatten(const Vector& v, int rows);

}  // namespace geomint

#endif
