#include "mapt/inference_engine.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mapt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_compatible(const CountedTree& tree, const HyperParams& hp) {
  if (!(tree.domain() == hp.domain))
    throw std::invalid_argument("tree and hyperparameters use different domains");
  if (tree.max_depth() != hp.max_depth)
    throw std::invalid_argument("tree and hyperparameters use different depths");
}

std::vector<double> log_of(const std::vector<double>& p) {
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i] > 0.0 ? std::log(p[i]) : kNegInf;
  return out;
}

// s(i') = log M^{i'} + log xi_l(i') + log xi_r(i')
void combine_children(const CountedTree::Node& node, std::span<const double> log_xi,
                      std::span<const double> log_m, std::span<double> s) {
  const std::size_t I = s.size();
  for (std::size_t j = 0; j < I; ++j) {
    double v = log_m[j];
    if (node.left >= 0) v += log_xi[static_cast<std::size_t>(node.left) * I + j];
    if (node.right >= 0) v += log_xi[static_cast<std::size_t>(node.right) * I + j];
    s[j] = v;
  }
}

}  // namespace

ForwardTable::ForwardTable(int states, std::vector<double> log_xi, std::vector<double> log_m)
    : states_(states), log_xi_(std::move(log_xi)), log_m_(std::move(log_m)) {
  if (states_ < 1 || log_xi_.size() % static_cast<std::size_t>(states_) != 0 ||
      log_m_.size() != log_xi_.size())
    throw std::invalid_argument("malformed forward table");
}

std::vector<NodeId> ForwardTable::frontier(const CountedTree& tree) const {
  std::vector<NodeId> out;
  for (const auto& node : tree.nodes()) {
    if (node.count() == 0 || is_internal(node, tree.max_depth())) continue;
    // Points below a frontier node stay materialized; skip them.
    if (!node.id.is_root() && !is_internal(tree.node(static_cast<std::size_t>(tree.find(node.id.parent()))),
                                           tree.max_depth()))
      continue;
    out.push_back(node.id);
  }
  return out;
}

LocalTerms compute_local_terms(const CountedTree& tree, const HyperParams& hp) {
  check_compatible(tree, hp);
  const int I = hp.states();
  LocalTerms local;
  local.states = I;
  local.log_m.assign(tree.nodes().size() * static_cast<std::size_t>(I), 0.0);
  for (std::size_t a = 0; a < tree.nodes().size(); ++a) {
    const auto& node = tree.node(a);
    if (!is_internal(node, tree.max_depth())) continue;
    const auto [nl, nr] = tree.split_counts(node.id);
    const SplitCounts counts{nl, nr};
    const double theta0 = hp.theta0(node.id);
    const auto& comps = hp.components_at(node.id.level);
    for (int i = 0; i < I; ++i)
      local.log_m[a * static_cast<std::size_t>(I) + static_cast<std::size_t>(i)] =
          log_M_component(theta0, comps[static_cast<std::size_t>(i)], counts);
  }
  return local;
}

double frontier_log_xi(const CountedTree& tree, const CountedTree::Node& node,
                       const BaseMeasure& base) {
  if (node.count() == 0) return 0.0;
  if (base.kind() == BaseMeasure::Kind::Uniform)
    return -static_cast<double>(node.count()) *
           std::log(std::ldexp(tree.domain().width(), -node.id.level));
  double acc = -static_cast<double>(node.count()) * base.log_mass(node.id);
  for (double x : tree.points(node)) acc += base.log_density(x);
  return acc;
}

ForwardTable forward(const CountedTree& tree, const HyperParams& hp) {
  return forward(tree, hp, compute_local_terms(tree, hp));
}

ForwardTable forward(const CountedTree& tree, const HyperParams& hp,
                     const LocalTerms& local) {
  check_compatible(tree, hp);
  const int I = hp.states();
  const auto uI = static_cast<std::size_t>(I);
  if (local.states != I || local.log_m.size() != tree.nodes().size() * uI)
    throw std::invalid_argument("local terms do not match the tree and hyperparameters");

  const auto log_init = log_of(hp.init_probs);
  const auto log_trans = log_of(hp.transition);
  std::vector<double> log_xi(tree.nodes().size() * uI, 0.0);
  const std::span<const double> log_m(local.log_m);
  std::vector<double> s(uI);

  // Children have larger indices than their parents.
  for (std::size_t a = tree.nodes().size(); a-- > 0;) {
    const auto& node = tree.node(a);
    double* row = log_xi.data() + a * uI;
    if (!is_internal(node, tree.max_depth())) {
      const double v = frontier_log_xi(tree, node, hp.base);
      for (std::size_t i = 0; i < uI; ++i) row[i] = v;
      continue;
    }
    combine_children(node, log_xi, log_m.subspan(a * uI, uI), s);
    if (node.id.is_root()) {
      double acc = kNegInf;
      for (std::size_t j = 0; j < uI; ++j) acc = log_add_exp(acc, log_init[j] + s[j]);
      for (std::size_t i = 0; i < uI; ++i) row[i] = acc;
      continue;
    }
    for (std::size_t i = 0; i < uI; ++i) {
      double acc = kNegInf;
      for (std::size_t j = i; j < uI; ++j) {
        const double lg = log_trans[i * uI + j];
        if (lg != kNegInf) acc = log_add_exp(acc, lg + s[j]);
      }
      row[i] = acc;
    }
  }
  return ForwardTable(I, std::move(log_xi), local.log_m);
}

PosteriorTree::PosteriorTree(int states, std::vector<double> init, std::vector<double> prior,
                             std::vector<double> trans, std::vector<std::uint8_t> has_own)
    : states_(states),
      init_(std::move(init)),
      prior_(std::move(prior)),
      trans_(std::move(trans)),
      has_own_(std::move(has_own)) {}

std::span<const double> PosteriorTree::transition(std::size_t node) const {
  const auto block = static_cast<std::size_t>(states_ * states_);
  if (node < has_own_.size() && has_own_[node] != 0)
    return std::span<const double>(trans_).subspan(node * block, block);
  return prior_;
}

PosteriorTree backward(const CountedTree& tree, const HyperParams& hp,
                       const ForwardTable& fwd) {
  check_compatible(tree, hp);
  const int I = hp.states();
  const auto uI = static_cast<std::size_t>(I);
  if (fwd.states() != I || fwd.size() != tree.nodes().size())
    throw std::invalid_argument("forward table does not match the tree");

  const auto log_init = log_of(hp.init_probs);
  const auto log_trans = log_of(hp.transition);
  std::vector<double> init = hp.init_probs;
  std::vector<double> trans(tree.nodes().size() * uI * uI, 0.0);
  std::vector<std::uint8_t> has_own(tree.nodes().size(), 0);
  std::vector<double> s(uI);

  for (std::size_t a = 0; a < tree.nodes().size(); ++a) {
    const auto& node = tree.node(a);
    if (!is_internal(node, tree.max_depth())) continue;
    combine_children(node, fwd.raw(), fwd.log_m(a), s);
    if (node.id.is_root()) {
      const double z = fwd.log_xi(a, 0);
      double sum = 0.0;
      for (std::size_t j = 0; j < uI; ++j) sum += init[j] = std::exp(log_init[j] + s[j] - z);
      for (double& p : init) p /= sum;
      continue;
    }
    has_own[a] = 1;
    double* m = trans.data() + a * uI * uI;
    for (std::size_t i = 0; i < uI; ++i) {
      const double z = fwd.log_xi(a, static_cast<int>(i));
      double sum = 0.0;
      for (std::size_t j = i; j < uI; ++j) {
        const double lg = log_trans[i * uI + j];
        m[i * uI + j] = lg == kNegInf ? 0.0 : std::exp(lg + s[j] - z);
        sum += m[i * uI + j];
      }
      for (std::size_t j = i; j < uI; ++j) m[i * uI + j] /= sum;
    }
  }
  return PosteriorTree(I, std::move(init), hp.transition, std::move(trans), std::move(has_own));
}

std::vector<double> state_marginals(const CountedTree& tree, const HyperParams& hp,
                                    const PosteriorTree& post) {
  const auto uI = static_cast<std::size_t>(hp.states());
  std::vector<double> marg(tree.nodes().size() * uI, 0.0);
  for (std::size_t a = 0; a < tree.nodes().size(); ++a) {
    const auto& node = tree.node(a);
    if (node.id.level >= tree.max_depth()) continue;
    double* row = marg.data() + a * uI;
    if (node.id.is_root()) {
      for (std::size_t i = 0; i < uI; ++i) row[i] = post.init()[i];
      continue;
    }
    const auto p = tree.find(node.id.parent());
    const double* prow = marg.data() + static_cast<std::size_t>(p) * uI;
    const auto m = post.transition(a);
    for (std::size_t i = 0; i < uI; ++i)
      for (std::size_t j = i; j < uI; ++j) row[j] += prow[i] * m[i * uI + j];
  }
  return marg;
}

double log_marginal(const CountedTree& tree, const HyperParams& hp) {
  return forward(tree, hp).log_marginal();
}

}  // namespace mapt
