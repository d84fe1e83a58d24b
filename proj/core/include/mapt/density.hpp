#ifndef MAPT_DENSITY_HPP
#define MAPT_DENSITY_HPP

#include <span>
#include <vector>

#include "mapt/inference_engine.hpp"
#include "mapt/partition_tree.hpp"
#include "mapt/prior_config.hpp"

namespace mapt {

/// A density that is q0 times a constant on every level-`depth` cell:
/// f(x) = factor[leaf(x)] * q0(x). Under a uniform base it is piecewise
/// constant on the leaves.
class LeafDensity {
 public:
  LeafDensity() = default;
  LeafDensity(BaseMeasure base, int depth, std::vector<double> factors);

  double operator()(double x) const;
  const Domain& domain() const { return base_.domain(); }
  int depth() const { return depth_; }
  const std::vector<double>& factors() const { return factors_; }
  /// Exact integral over the domain: sum_j factor_j * Q0(leaf_j).
  double total_mass() const;

 private:
  BaseMeasure base_;
  int depth_ = 0;
  std::vector<double> factors_;
};

/// Largest depth for which LeafDensity materializes every leaf.
inline constexpr int kMaxLeafDensityDepth = 24;

/// A fitted Markov-APT: the counted tree, hyperparameters and forward table.
/// Immutable; concurrent ppd queries are safe.
class DensityEstimate {
 public:
  DensityEstimate(CountedTree tree, HyperParams hp);
  DensityEstimate(CountedTree tree, HyperParams hp, ForwardTable fwd);

  static DensityEstimate fit(std::span<const double> data, const HyperParams& hp);

  const CountedTree& tree() const { return tree_; }
  const HyperParams& hyperparams() const { return hp_; }
  const ForwardTable& forward_table() const { return fwd_; }
  double log_marginal() const { return fwd_.log_marginal(); }

  /// Exact posterior predictive density xi*_Omega / xi_Omega at x. Only the
  /// root-to-leaf branch containing x is recomputed; every off-branch xi is
  /// reused from the forward table. Throws std::domain_error outside the
  /// domain.
  double ppd(double x) const;
  std::vector<double> ppd(std::span<const double> xs) const;

  /// The posterior predictive density on every leaf at once, by a single
  /// top-down sweep over the tree.
  LeafDensity leaf_density() const;

  PosteriorTree posterior() const { return backward(tree_, hp_, fwd_); }

 private:
  CountedTree tree_;
  HyperParams hp_;
  ForwardTable fwd_;
};

double ppd(const DensityEstimate& est, double x);

}  // namespace mapt

#endif  // MAPT_DENSITY_HPP
