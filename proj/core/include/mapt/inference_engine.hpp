#ifndef MAPT_INFERENCE_ENGINE_HPP
#define MAPT_INFERENCE_ENGINE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "mapt/local_likelihood.hpp"
#include "mapt/partition_tree.hpp"
#include "mapt/prior_config.hpp"

namespace mapt {

// Shrinkage states are 0-based throughout the library: state I-1 is the
// complete-shrinkage (nu = infinity) state when I >= 2.

/// A materialized node is internal when the forward recursion combines its
/// children there: n(A) >= 2 and level < max_depth. All others bottom out.
inline bool is_internal(const CountedTree::Node& node, int max_depth) {
  return node.count() >= 2 && node.id.level < max_depth;
}

/// log M^i_A(theta0) for every internal node, laid out like ForwardTable.
/// Depends on the precision components and base measure but not on the
/// transition matrix, so it can be shared across a stickiness grid.
struct LocalTerms {
  int states = 0;
  std::vector<double> log_m;  // node index * I + i; 0 for non-internal nodes
};

LocalTerms compute_local_terms(const CountedTree& tree, const HyperParams& hp);

/// log xi_A(i, phi) for every materialized node and parent state i.
///
/// Rows are indexed like tree.nodes(). Frontier rows (n(A) <= 1 or level K)
/// hold the state-independent closed form log q0(x | A); absent nodes have
/// log xi = 0. The root row is constant and equals the log marginal
/// likelihood.
class ForwardTable {
 public:
  ForwardTable() = default;
  ForwardTable(int states, std::vector<double> log_xi, std::vector<double> log_m);

  int states() const { return states_; }
  std::size_t size() const { return states_ == 0 ? 0 : log_xi_.size() / static_cast<std::size_t>(states_); }
  double log_xi(std::size_t node, int i) const {
    return log_xi_[node * static_cast<std::size_t>(states_) + static_cast<std::size_t>(i)];
  }
  std::span<const double> row(std::size_t node) const {
    return std::span<const double>(log_xi_).subspan(node * static_cast<std::size_t>(states_),
                                                     static_cast<std::size_t>(states_));
  }
  std::span<const double> log_m(std::size_t node) const {
    return std::span<const double>(log_m_).subspan(node * static_cast<std::size_t>(states_),
                                                   static_cast<std::size_t>(states_));
  }
  double log_marginal() const { return log_xi_.empty() ? 0.0 : log_xi_.front(); }
  const std::vector<double>& raw() const { return log_xi_; }

  /// Nodes where the recursion bottomed out.
  std::vector<NodeId> frontier(const CountedTree& tree) const;

 private:
  int states_ = 0;
  std::vector<double> log_xi_;
  std::vector<double> log_m_;
};

/// Bottom-up forward summation. Throws std::invalid_argument when the tree
/// and hyperparameters disagree on domain or depth.
ForwardTable forward(const CountedTree& tree, const HyperParams& hp);
ForwardTable forward(const CountedTree& tree, const HyperParams& hp,
                     const LocalTerms& local);

/// Frontier value log q0(x | A) for the points stored in `node`.
double frontier_log_xi(const CountedTree& tree, const CountedTree::Node& node,
                       const BaseMeasure& base);

/// Posterior Markov-tree parameters over the shrinkage states.
class PosteriorTree {
 public:
  PosteriorTree() = default;
  PosteriorTree(int states, std::vector<double> init, std::vector<double> prior,
                std::vector<double> trans, std::vector<std::uint8_t> has_own);

  int states() const { return states_; }
  const std::vector<double>& init() const { return init_; }
  /// gamma~(A) for materialized node `node` (I x I row-major). Nodes without
  /// data-driven updates return the prior matrix.
  std::span<const double> transition(std::size_t node) const;
  std::span<const double> prior_transition() const { return prior_; }
  double trans(std::size_t node, int from, int to) const {
    return transition(node)[static_cast<std::size_t>(from * states_ + to)];
  }

 private:
  int states_ = 0;
  std::vector<double> init_;
  std::vector<double> prior_;
  std::vector<double> trans_;
  std::vector<std::uint8_t> has_own_;
};

PosteriorTree backward(const CountedTree& tree, const HyperParams& hp,
                       const ForwardTable& fwd);

/// P(C(A) = i | data) for every materialized node with level < max_depth,
/// rows indexed like tree.nodes(). Rows of frontier nodes propagate the
/// prior chain below their parent.
std::vector<double> state_marginals(const CountedTree& tree, const HyperParams& hp,
                                    const PosteriorTree& post);

/// One exact joint posterior draw of (C, nu, theta) on the internal nodes.
/// Every other node keeps theta(A) = theta0(A).
struct PosteriorDraw {
  std::vector<NodeId> nodes;
  std::vector<int> states;
  std::vector<Precision> precisions;
  std::vector<double> pacs;
};

std::vector<PosteriorDraw> sample_posterior(const PosteriorTree& post,
                                            const HyperParams& hp,
                                            const CountedTree& tree,
                                            std::uint64_t seed, int n_draws);

/// Convenience: forward pass root value.
double log_marginal(const CountedTree& tree, const HyperParams& hp);

}  // namespace mapt

#endif  // MAPT_INFERENCE_ENGINE_HPP
