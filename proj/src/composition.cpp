#include "geomint/composition.hpp"

#include <cmath>
#include <random>

namespace geomint {

void SplitProblem::validate(unsigned seed) const {
  if (parts.empty()) throw ConfigError("SplitProblem: no parts");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    Vector x(full.dimension);
    for (int i = 0; i < full.dimension; ++i) x(i) = unif(rng);
    const double t = unif(rng);
    Vector sum = Vector::Zero(full.dimension);
    for (const auto& part : parts) sum += part.field.rhs(t, x);
    const double err = (sum - full.rhs(t, x)).lpNorm<Eigen::Infinity>();
    if (err > 1e-10 * std::max(1.0, full.rhs(t, x).lpNorm<Eigen::Infinity>()))
      throw ConfigError("SplitProblem: parts do not sum to the full field");
  }
}

bool CompositionScheme::palindromic() const {
  const std::size_t m = stages.size();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& a = stages[i];
    const auto& b = stages[m - 1 - i];
    if (a.part != b.part) return false;
    if (std::abs(a.weight - b.weight) >
        1e-15 * std::max(1.0, std::abs(a.weight)))
      return false;
  }
  return true;
}

void CompositionScheme::validate(int num_parts) const {
  std::vector<double> sums(num_parts, 0.0);
  for (const auto& st : stages) {
    if (st.part < 0 || st.part >= num_parts)
      throw ConfigError("CompositionScheme: stage refers to missing part");
    sums[st.part] += st.weight;
  }
  for (double s : sums)
    if (std::abs(s - 1.0) > 1e-12)
      throw ConfigError("CompositionScheme: part weights do not sum to 1");
}

CompositionScheme strang_scheme() {
  CompositionScheme s;
  s.stages = {{0, 0.5}, {1, 1.0}, {0, 0.5}};
  s.order = 2;
  return s;
}

CompositionScheme yoshida_boost(const CompositionScheme& scheme) {
  if (!scheme.palindromic())
    throw ConfigError("yoshida_boost: input scheme must be palindromic");
  if (scheme.order <= 0 || scheme.order % 2 != 0)
    throw ConfigError("yoshida_boost: input order must be even");
  const double P = scheme.order / 2;
  const double r = std::pow(2.0, 1.0 / (2.0 * P + 1.0));
  const double alpha = (r - 1.0) / (2.0 - r);
  const double w_outer = 1.0 + alpha;
  const double w_inner = -(1.0 + 2.0 * alpha);

  CompositionScheme out;
  auto append_scaled = [&out](const CompositionScheme& base, double w) {
    for (const auto& st : base.stages) {
      if (!out.stages.empty() && out.stages.back().part == st.part)
        out.stages.back().weight += w * st.weight;  // merge touching sub-steps
      else
        out.stages.push_back({st.part, w * st.weight});
    }
  };
  append_scaled(scheme, w_outer);
  append_scaled(scheme, w_inner);
  append_scaled(scheme, w_outer);
  out.order = scheme.order + 2;
  return out;
}

Vector compose_step(const CompositionScheme& scheme, const SplitProblem& split, double t,
                    const Vector& x, double h) {
  Vector y = x;
  for (std::size_t k = 0; k < scheme.stages.size(); ++k) {
    const auto& st = scheme.stages[k];
    const auto& part = split.parts.at(st.part);
    const double hw = st.weight * h;
    if (hw < 0 && !part.negative_time_ok)
      throw ConfigError("compose_step: part " + std::to_string(st.part) +
                        " rejects negative-time sub-steps");
    try {
      y = part.flow(t, y, hw);
    } catch (const SolverError& e) {
      throw SolverError("compose_step: part " + std::to_string(st.part) + " failed: " +
                            e.what(),
                        e.residual());
    }
  }
  return y;
}

StepMap make_composition_step(CompositionScheme scheme, SplitProblem split) {
  scheme.validate(static_cast<int>(split.parts.size()));
  return [scheme = std::move(scheme), split = std::move(split)](double t, const Vector& x,
                                                                double h) {
    return compose_step(scheme, split, t, x, h);
  };
}

double time_symmetry_defect(const StepMap& step, double t, const Vector& x, double h) {
  const Vector forward = step(t, x, h);
  const Vector back = step(t + h, forward, -h);
  return (back - x).lpNorm<Eigen::Infinity>();
}

}  // namespace geomint
