#include "mapt/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace mapt {

double PTSpec::precision_at_level(int level) const {
  const double alpha = alpha_fn(level + 1);
  if (!(alpha > 0.0)) throw std::invalid_argument("PT alpha_fn must be positive");
  return 2.0 * alpha;
}

PTFit::PTFit(CountedTree tree, PTSpec spec) : tree_(std::move(tree)), spec_(std::move(spec)) {
  if (!(spec_.base.domain() == tree_.domain()))
    throw std::invalid_argument("PT base measure domain differs from the tree domain");
  if (spec_.max_depth != tree_.max_depth())
    throw std::invalid_argument("PT depth differs from the tree depth");
  post_.resize(tree_.nodes().size());
  for (std::size_t a = 0; a < tree_.nodes().size(); ++a) {
    const auto& node = tree_.node(a);
    if (node.id.level >= tree_.max_depth()) continue;
    const double theta0 = spec_.base.theta0(node.id);
    const double nu = spec_.precision_at_level(node.id.level);
    const auto [nl, nr] = tree_.split_counts(node.id);
    const double n = static_cast<double>(nl) + nr;
    post_[a] = {(theta0 * nu + nl) / (nu + n), nu + n};
  }
}

BetaPosterior PTFit::node_posterior(NodeId id) const {
  const auto idx = tree_.find(id);
  if (idx >= 0 && id.level < tree_.max_depth()) return post_[static_cast<std::size_t>(idx)];
  return {spec_.base.theta0(id), spec_.precision_at_level(id.level)};
}

double PTFit::ppd(double x) const {
  const Domain& domain = tree_.domain();
  if (!domain.contains(x))
    throw std::domain_error("pt_ppd: x = " + std::to_string(x) + " lies outside the domain");
  double value = 1.0;
  NodeId a{};
  while (a.level < tree_.max_depth()) {
    const bool go_right = x >= split_point(a, domain);
    const double mean = node_posterior(a).mean;
    value *= go_right ? 1.0 - mean : mean;
    a = a.child(go_right);
  }
  return value * std::exp(spec_.base.log_conditional_density(x, a));
}

LeafDensity PTFit::leaf_density() const {
  const int K = tree_.max_depth();
  if (K > kMaxLeafDensityDepth)
    throw std::invalid_argument("leaf_density: depth exceeds the materialization limit");
  std::vector<double> factors(std::size_t{1} << K, 0.0);
  // mass = posterior-mean probability of node a.
  auto sweep = [&](auto&& self, NodeId a, double mass) -> void {
    if (a.level == K || tree_.find(a) < 0) {
      // Below an empty node every PAC keeps its prior mean: the mass is
      // spread according to Q0.
      const double f = mass / std::exp(spec_.base.log_mass(a));
      const int shift = K - a.level;
      const std::size_t first = std::size_t{a.index} << shift;
      const std::size_t last = (std::size_t{a.index} + 1) << shift;
      for (std::size_t j = first; j < last; ++j) factors[j] = f;
      return;
    }
    const double mean = node_posterior(a).mean;
    self(self, a.left(), mass * mean);
    self(self, a.right(), mass * (1.0 - mean));
  };
  sweep(sweep, NodeId{}, 1.0);
  return LeafDensity(spec_.base, K, std::move(factors));
}

PTFit pt_fit(std::span<const double> data, const PTSpec& spec, const Domain& domain) {
  return PTFit(build_tree(data, domain, spec.max_depth), spec);
}

double pt_ppd(const PTFit& fit, double x) { return fit.ppd(x); }

std::vector<StateComponent> pt_matched_components(const PTSpec& spec) {
  std::vector<StateComponent> comps;
  for (int level = 0; level < spec.max_depth; ++level)
    comps.push_back(StateComponent::fixed(spec.precision_at_level(level)));
  return comps;
}

}  // namespace mapt
