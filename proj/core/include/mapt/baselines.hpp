#ifndef MAPT_BASELINES_HPP
#define MAPT_BASELINES_HPP

#include <functional>
#include <span>
#include <vector>

#include "mapt/density.hpp"
#include "mapt/local_likelihood.hpp"
#include "mapt/partition_tree.hpp"
#include "mapt/prior_config.hpp"

namespace mapt {

/// Standard Polya tree: theta(A) ~ Beta(alpha(k), alpha(k)) scaled around
/// theta0(A), i.e. precision nu(A) = 2 alpha(k). Resolution k counts from 1
/// at the root split, so a node at tree level `l` uses alpha(l + 1).
struct PTSpec {
  std::function<double(int)> alpha_fn = [](int k) { return static_cast<double>(k) * k; };
  BaseMeasure base;
  int max_depth = kDefaultDepth;

  double precision_at_level(int level) const;
};

struct BetaPosterior {
  double mean = 0.5;       // theta0~(A)
  double precision = 2.0;  // nu~(A) = nu(A) + n(A)
};

/// Closed-form PT posterior. Immutable; concurrent reads are safe.
class PTFit {
 public:
  PTFit(CountedTree tree, PTSpec spec);

  const CountedTree& tree() const { return tree_; }
  const PTSpec& spec() const { return spec_; }
  /// Posterior Beta parameters of theta(A); nodes without data keep the prior.
  BetaPosterior node_posterior(NodeId id) const;
  /// Posterior-mean density: product of posterior PAC means along the
  /// branch, times q0(x | leaf). Throws std::domain_error outside the domain.
  double ppd(double x) const;
  LeafDensity leaf_density() const;

 private:
  CountedTree tree_;
  PTSpec spec_;
  std::vector<BetaPosterior> post_;  // indexed like tree_.nodes()
};

PTFit pt_fit(std::span<const double> data, const PTSpec& spec, const Domain& domain);
double pt_ppd(const PTFit& fit, double x);

/// One fixed-precision component per level matching the PT's Beta
/// precisions; feeds make_single_state_hyperparams for the reduction check.
std::vector<StateComponent> pt_matched_components(const PTSpec& spec);

}  // namespace mapt

#endif  // MAPT_BASELINES_HPP
