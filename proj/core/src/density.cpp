#include "mapt/density.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mapt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> log_of(const std::vector<double>& p) {
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i] > 0.0 ? std::log(p[i]) : kNegInf;
  return out;
}

double stored_log_xi(const CountedTree& tree, const ForwardTable& fwd, NodeId id, int i) {
  const auto idx = tree.find(id);
  return idx < 0 ? 0.0 : fwd.log_xi(static_cast<std::size_t>(idx), i);
}

SplitCounts with_pseudo_point(const CountedTree& tree, NodeId id, bool go_right) {
  auto [nl, nr] = tree.split_counts(id);
  return go_right ? SplitCounts{nl, nr + 1} : SplitCounts{nl + 1, nr};
}

// Mixes s(i') over the children's states: the root uses the initial
// probabilities, every other node the upper-triangular transition matrix.
void mix_states(bool root, std::span<const double> log_init, std::span<const double> log_trans,
                std::span<const double> s, std::span<double> out) {
  const std::size_t I = s.size();
  if (root) {
    double acc = kNegInf;
    for (std::size_t j = 0; j < I; ++j) acc = log_add_exp(acc, log_init[j] + s[j]);
    for (auto& v : out) v = acc;
    return;
  }
  for (std::size_t i = 0; i < I; ++i) {
    double acc = kNegInf;
    for (std::size_t j = i; j < I; ++j)
      if (log_trans[i * I + j] != kNegInf) acc = log_add_exp(acc, log_trans[i * I + j] + s[j]);
    out[i] = acc;
  }
}

}  // namespace

LeafDensity::LeafDensity(BaseMeasure base, int depth, std::vector<double> factors)
    : base_(std::move(base)), depth_(depth), factors_(std::move(factors)) {
  if (depth_ < 0 || depth_ > kMaxLeafDensityDepth ||
      factors_.size() != (std::size_t{1} << depth_))
    throw std::invalid_argument("leaf density needs exactly 2^depth factors");
}

double LeafDensity::operator()(double x) const {
  const NodeId leaf = locate(x, depth_, base_.domain());
  return factors_[leaf.index] * std::exp(base_.log_density(x));
}

double LeafDensity::total_mass() const {
  double acc = 0.0;
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    const NodeId leaf{depth_, static_cast<std::uint32_t>(j)};
    acc += factors_[j] * std::exp(base_.log_mass(leaf));
  }
  return acc;
}

DensityEstimate::DensityEstimate(CountedTree tree, HyperParams hp)
    : tree_(std::move(tree)), hp_(std::move(hp)) {
  fwd_ = forward(tree_, hp_);
}

DensityEstimate::DensityEstimate(CountedTree tree, HyperParams hp, ForwardTable fwd)
    : tree_(std::move(tree)), hp_(std::move(hp)), fwd_(std::move(fwd)) {
  if (fwd_.states() != hp_.states() || fwd_.size() != tree_.nodes().size())
    throw std::invalid_argument("forward table does not match the tree and hyperparameters");
}

DensityEstimate DensityEstimate::fit(std::span<const double> data, const HyperParams& hp) {
  hp.validate();
  return DensityEstimate(build_tree(data, hp.domain, hp.max_depth), hp);
}

double DensityEstimate::ppd(double x) const {
  const Domain& domain = tree_.domain();
  if (!domain.contains(x)) {
    throw std::domain_error("ppd: x = " + std::to_string(x) + " lies outside the domain");
  }
  const int K = tree_.max_depth();
  const int I = hp_.states();
  const auto uI = static_cast<std::size_t>(I);

  // Walk down to the first node that is empty (the pseudo-point is then
  // alone there) or sits at the truncation depth.
  std::vector<NodeId> branch;
  NodeId c{};
  std::int64_t idx = tree_.find(c);
  while (idx >= 0 && tree_.node(static_cast<std::size_t>(idx)).count() > 0 && c.level < K) {
    branch.push_back(c);
    c = c.child(x >= split_point(c, domain));
    idx = tree_.find(c);
  }
  double bottom = hp_.base.log_conditional_density(x, c);
  if (idx >= 0) bottom += fwd_.log_xi(static_cast<std::size_t>(idx), 0);
  std::vector<double> xi_star(uI, bottom);

  const auto log_init = log_of(hp_.init_probs);
  const auto log_trans = log_of(hp_.transition);
  std::vector<double> s(uI);
  for (auto it = branch.rbegin(); it != branch.rend(); ++it) {
    const NodeId a = *it;
    const bool go_right = !c.is_left_child();
    const SplitCounts counts = with_pseudo_point(tree_, a, go_right);
    const double theta0 = hp_.theta0(a);
    const auto& comps = hp_.components_at(a.level);
    const NodeId sib = c.sibling();
    for (std::size_t j = 0; j < uI; ++j)
      s[j] = log_M_component(theta0, comps[j], counts) + xi_star[j] +
             stored_log_xi(tree_, fwd_, sib, static_cast<int>(j));
    mix_states(a.is_root(), log_init, log_trans, s, xi_star);
    c = a;
  }
  return std::exp(xi_star[0] - fwd_.log_marginal());
}

std::vector<double> DensityEstimate::ppd(std::span<const double> xs) const {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(ppd(x));
  return out;
}

LeafDensity DensityEstimate::leaf_density() const {
  const int K = tree_.max_depth();
  if (K > kMaxLeafDensityDepth)
    throw std::invalid_argument("leaf_density: depth exceeds the materialization limit");
  const auto uI = static_cast<std::size_t>(hp_.states());
  const auto log_init = log_of(hp_.init_probs);
  const auto log_trans = log_of(hp_.transition);
  const double log_z = fwd_.log_marginal();
  std::vector<double> factors(std::size_t{1} << K, 0.0);

  // log_u(i) is the coefficient of xi*_A(i) in xi*_Omega, i indexing the
  // parent's state.
  auto sweep = [&](auto&& self, NodeId a, const std::vector<double>& log_u) -> void {
    const auto idx = tree_.find(a);
    const std::uint32_t n = idx < 0 ? 0U : tree_.node(static_cast<std::size_t>(idx)).count();
    if (n == 0 || a.level == K) {
      double lf = log_sum_exp(log_u) - log_z - hp_.base.log_mass(a);
      if (n > 0) lf += fwd_.log_xi(static_cast<std::size_t>(idx), 0);
      const double f = std::exp(lf);
      const int shift = K - a.level;
      const std::size_t first = std::size_t{a.index} << shift;
      const std::size_t last = (std::size_t{a.index} + 1) << shift;
      for (std::size_t j = first; j < last; ++j) factors[j] = f;
      return;
    }
    std::vector<double> mixed(uI);
    if (a.is_root()) {
      const double total = log_sum_exp(log_u);
      for (std::size_t j = 0; j < uI; ++j) mixed[j] = total + log_init[j];
    } else {
      for (std::size_t j = 0; j < uI; ++j) {
        double acc = kNegInf;
        for (std::size_t i = 0; i <= j; ++i)
          if (log_trans[i * uI + j] != kNegInf) acc = log_add_exp(acc, log_u[i] + log_trans[i * uI + j]);
        mixed[j] = acc;
      }
    }
    const double theta0 = hp_.theta0(a);
    const auto& comps = hp_.components_at(a.level);
    for (bool go_right : {false, true}) {
      const SplitCounts counts = with_pseudo_point(tree_, a, go_right);
      const NodeId child = a.child(go_right);
      const NodeId sib = child.sibling();
      std::vector<double> u(uI);
      for (std::size_t j = 0; j < uI; ++j)
        u[j] = mixed[j] + log_M_component(theta0, comps[j], counts) +
               stored_log_xi(tree_, fwd_, sib, static_cast<int>(j));
      self(self, child, u);
    }
  };
  std::vector<double> start(uI, kNegInf);
  start[0] = 0.0;
  sweep(sweep, NodeId{}, start);
  return LeafDensity(hp_.base, K, std::move(factors));
}

double ppd(const DensityEstimate& est, double x) { return est.ppd(x); }

}  // namespace mapt
