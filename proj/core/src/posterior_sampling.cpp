#include <cmath>
#include <stdexcept>

#include "mapt/inference_engine.hpp"
#include "mapt/random.hpp"

namespace mapt {

namespace {

int draw_categorical(Rng& rng, std::span<const double> probs, std::size_t first) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double target = u(rng);
  for (std::size_t j = first; j < probs.size(); ++j) {
    target -= probs[j];
    if (target < 0.0) return static_cast<int>(j);
  }
  // Round-off: fall back to the last state with positive mass.
  for (std::size_t j = probs.size(); j-- > first;)
    if (probs[j] > 0.0) return static_cast<int>(j);
  return static_cast<int>(first);
}

}  // namespace

std::vector<PosteriorDraw> sample_posterior(const PosteriorTree& post,
                                            const HyperParams& hp,
                                            const CountedTree& tree,
                                            std::uint64_t seed, int n_draws) {
  if (n_draws < 1) throw std::invalid_argument("n_draws must be >= 1");
  if (post.states() != hp.states())
    throw std::invalid_argument("posterior tree and hyperparameters disagree on I");
  const int I = hp.states();
  const auto uI = static_cast<std::size_t>(I);

  // Internal nodes in pre-order, so a parent's state is known before its children.
  std::vector<std::size_t> order;
  std::vector<std::int64_t> parent_slot(tree.nodes().size(), -1);
  for (std::size_t a = 0; a < tree.nodes().size(); ++a) {
    const auto& node = tree.node(a);
    if (!is_internal(node, tree.max_depth())) continue;
    if (!node.id.is_root())
      parent_slot[a] = static_cast<std::int64_t>(tree.find(node.id.parent()));
    order.push_back(a);
  }

  // Posterior quadrature weights for nu do not change across draws.
  struct NodeCache {
    NodeId id;
    SplitCounts counts;
    double theta0;
    std::vector<std::vector<double>> nu_weights;
  };
  std::vector<NodeCache> cache;
  cache.reserve(order.size());
  for (std::size_t a : order) {
    const auto& node = tree.node(a);
    const auto [nl, nr] = tree.split_counts(node.id);
    const double theta0 = hp.theta0(node.id);
    const SplitCounts counts{nl, nr};
    cache.push_back({node.id, counts, theta0,
                     posterior_nu_weights(theta0, hp.components_at(node.id.level), counts)});
  }
  std::vector<std::size_t> slot_of(tree.nodes().size(), 0);
  for (std::size_t k = 0; k < order.size(); ++k) slot_of[order[k]] = k;

  Rng rng(seed);
  std::vector<PosteriorDraw> draws(static_cast<std::size_t>(n_draws));
  for (auto& draw : draws) {
    draw.nodes.reserve(order.size());
    draw.states.resize(order.size());
    draw.precisions.resize(order.size());
    draw.pacs.resize(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
      const std::size_t a = order[k];
      const auto& c = cache[k];
      draw.nodes.push_back(c.id);

      int state;
      if (parent_slot[a] < 0) {
        state = draw_categorical(rng, post.init(), 0);
      } else {
        const int from = draw.states[slot_of[static_cast<std::size_t>(parent_slot[a])]];
        state = draw_categorical(rng, post.transition(a).subspan(static_cast<std::size_t>(from) * uI, uI),
                                 static_cast<std::size_t>(from));
      }
      draw.states[k] = state;

      const auto& comp = hp.components_at(c.id.level)[static_cast<std::size_t>(state)];
      const auto& w = c.nu_weights[static_cast<std::size_t>(state)];
      const Precision nu = comp.quad_points[static_cast<std::size_t>(draw_categorical(rng, w, 0))];
      draw.precisions[k] = nu;
      if (nu.is_infinite()) {
        draw.pacs[k] = c.theta0;
      } else {
        draw.pacs[k] = sample_beta(rng, c.theta0 * nu.value + c.counts.n_left,
                                   (1.0 - c.theta0) * nu.value + c.counts.n_right);
      }
    }
  }
  return draws;
}

}  // namespace mapt
