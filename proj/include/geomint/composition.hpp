#ifndef GEOMINT_COMPOSITION_HPP
#define GEOMINT_COMPOSITION_HPP

#include "geomint/core.hpp"

namespace geomint {

/// One summand of a split vector field together with its flow map. The flow
/// is exact when available, otherwise a designated one-step method of
/// sufficient order.
struct FlowPart {
  VectorFieldProblem field;
  std::function<Vector(double t, const Vector& x, double h)> flow;
  bool negative_time_ok = true;
};

struct SplitProblem {
  VectorFieldProblem full;
  std::vector<FlowPart> parts;

  /// Part evaluations must sum to the full field (checked at pseudorandom
  /// points, 1e-10).
  void validate(unsigned seed = 0x5eed) const;
};

/// Ordered product of part flows e^{w_1 h L_{i_1}} ... e^{w_m h L_{i_m}},
/// applied left-to-right.
struct CompositionScheme {
  struct Stage {
    int part;
    double weight;
  };
  std::vector<Stage> stages;
  int order = 0;

  bool palindromic() const;
  /// Weights of every part must sum to 1.
  void validate(int num_parts) const;
};

/// (1/2 L1)(1 L2)(1/2 L1); palindromic, order 2.
CompositionScheme strang_scheme();

/// Triple concatenation Phi((1+a)h) Phi(-(1+2a)h) Phi((1+a)h) with
/// a = (2^{1/(2P+1)} - 1)/(2 - 2^{1/(2P+1)}), raising a palindromic scheme
/// of even order 2P to order 2P+2. Adjacent stages of the same part merge.
CompositionScheme yoshida_boost(const CompositionScheme& scheme);

Vector compose_step(const CompositionScheme& scheme, const SplitProblem& split, double t,
                    const Vector& x, double h);

StepMap make_composition_step(CompositionScheme scheme, SplitProblem split);

/// || Phi_{-h}(Phi_h(x)) - x ||_inf
double time_symmetry_defect(const StepMap& step, double t, const Vector& x, double h);

}  // namespace geomint

#endif
