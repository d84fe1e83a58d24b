#ifndef MAPT_PRIOR_CONFIG_HPP
#define MAPT_PRIOR_CONFIG_HPP

#include <cstdint>
#include <vector>

#include "mapt/local_likelihood.hpp"
#include "mapt/partition_tree.hpp"

namespace mapt {

/// Prior mean Q0 on the domain: uniform, or piecewise uniform with the given
/// breakpoints (first = lo, last = hi) and strictly positive piece masses.
class BaseMeasure {
 public:
  enum class Kind { Uniform, Piecewise };

  BaseMeasure() = default;
  static BaseMeasure uniform(const Domain& domain);
  static BaseMeasure piecewise(const Domain& domain, std::vector<double> breakpoints,
                               std::vector<double> masses);

  Kind kind() const { return kind_; }
  const Domain& domain() const { return domain_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& masses() const { return masses_; }

  double cdf(double x) const;
  /// log q0(x) with respect to Lebesgue measure.
  double log_density(double x) const;
  /// log Q0(A).
  double log_mass(NodeId id) const;
  /// theta0(A) = Q0(A_l) / Q0(A).
  double theta0(NodeId id) const;
  /// log q0(x | A) = log q0(x) - log Q0(A), for x in A.
  double log_conditional_density(double x, NodeId id) const;

  bool operator==(const BaseMeasure&) const = default;

 private:
  Kind kind_ = Kind::Uniform;
  Domain domain_;
  std::vector<double> breakpoints_;
  std::vector<double> masses_;
};

enum class Kernel { Uniform, Exponential };

/// Shrinkage-state transition family: k(i, i') = exp(-beta |i - i'|) on
/// i <= i'. The uniform kernel is the exponential kernel at beta = 0.
struct TransitionSpec {
  int states = 2;
  double beta = 0.0;
  Kernel kernel = Kernel::Exponential;
};

struct Transition {
  std::vector<double> init;    // gamma(Omega), length I
  std::vector<double> matrix;  // gamma(A), I x I row-major
};

/// I - 1 equal-width intervals on log10(nu) covering [L, U), each with H
/// midpoint nodes, followed by the point mass at infinity. Requires I >= 2.
std::vector<StateComponent> make_components(int states, double L, double U, int H);

Transition make_transition(const TransitionSpec& spec);

double theta0_for(NodeId node, const BaseMeasure& base);

/// The full hyperparameter bundle phi.
///
/// One transition matrix is shared by every non-root node. The precision
/// components are shared across levels unless `level_components` is
/// non-empty, in which case entry k overrides them at level k.
struct HyperParams {
  Domain domain;
  int max_depth = kDefaultDepth;
  BaseMeasure base;
  std::vector<StateComponent> components;
  std::vector<std::vector<StateComponent>> level_components;
  std::vector<double> init_probs;
  std::vector<double> transition;
  // Provenance of the default recipe; informational for serialization.
  double beta = 0.0;
  double L = -1.0;
  double U = 4.0;
  int H = 10;

  int states() const { return static_cast<int>(init_probs.size()); }
  double trans(int from, int to) const {
    return transition[static_cast<std::size_t>(from * states() + to)];
  }
  double theta0(NodeId id) const { return base.theta0(id); }
  const std::vector<StateComponent>& components_at(int level) const {
    return level_components.empty() ? components
                                    : level_components[static_cast<std::size_t>(level)];
  }
  /// Throws std::invalid_argument describing the first broken invariant.
  void validate() const;
};

struct ModelConfig {
  Domain domain{0.0, 1.0};
  int depth = kDefaultDepth;
  int states = 6;
  double beta = 0.5;
  double L = -1.0;
  double U = 4.0;
  int H = 10;
  // Empty breakpoints mean a uniform base measure.
  std::vector<double> base_breakpoints;
  std::vector<double> base_masses;
  std::uint64_t seed = 1;

  BaseMeasure base_measure() const;
};

/// Default recipe: uniform initial probabilities, exponential kernel with
/// stickiness beta, I - 1 log-uniform components on [L, U) plus {infinity}.
/// With states == 1 the single component is log-uniform on [L, U) (no
/// complete-shrinkage state).
HyperParams make_hyperparams(const ModelConfig& config);

/// Single shrinkage state with the given component at every level.
HyperParams make_single_state_hyperparams(const Domain& domain, int max_depth,
                                          const BaseMeasure& base,
                                          StateComponent component);
/// Single shrinkage state with a per-level component (entry k for level k).
HyperParams make_single_state_hyperparams(const Domain& domain, int max_depth,
                                          const BaseMeasure& base,
                                          std::vector<StateComponent> per_level);

}  // namespace mapt

#endif  // MAPT_PRIOR_CONFIG_HPP
