#include "mapt/empirical_bayes.hpp"

#include <stdexcept>

#include "mapt/inference_engine.hpp"
#include "mapt/parallel.hpp"

namespace mapt {

std::vector<int> default_states_grid() {
  std::vector<int> grid;
  for (int i = 2; i <= 11; ++i) grid.push_back(i);
  return grid;
}

std::vector<double> default_beta_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 20; ++k) grid.push_back(k / 10.0);
  return grid;
}

TuningResult empirical_bayes(const CountedTree& tree, const ModelConfig& base,
                             std::span<const int> states_grid,
                             std::span<const double> beta_grid) {
  if (states_grid.empty() || beta_grid.empty())
    throw std::invalid_argument("empirical_bayes needs non-empty grids");
  const std::size_t nb = beta_grid.size();
  std::vector<TuningPoint> surface(states_grid.size() * nb);

  // The local terms depend on I but not on beta, so each I is one job.
  parallel_for(states_grid.size(), [&](std::size_t s) {
    ModelConfig config = base;
    config.states = states_grid[s];
    config.beta = beta_grid[0];
    HyperParams hp = make_hyperparams(config);
    const LocalTerms local = compute_local_terms(tree, hp);
    for (std::size_t b = 0; b < nb; ++b) {
      const Transition t = make_transition({config.states, beta_grid[b], Kernel::Exponential});
      hp.init_probs = t.init;
      hp.transition = t.matrix;
      hp.beta = beta_grid[b];
      surface[s * nb + b] = {config.states, beta_grid[b],
                             forward(tree, hp, local).log_marginal()};
    }
  });

  TuningResult result;
  const TuningPoint* best = nullptr;
  for (const auto& p : surface) {
    if (best == nullptr || p.log_marginal > best->log_marginal) {
      best = &p;
    } else if (p.log_marginal == best->log_marginal &&
               (p.states < best->states ||
                (p.states == best->states && p.beta < best->beta))) {
      best = &p;
    }
  }
  result.states = best->states;
  result.beta = best->beta;
  result.log_marginal = best->log_marginal;
  result.surface = std::move(surface);
  return result;
}

TuningResult empirical_bayes(std::span<const double> data, const Domain& domain, int depth,
                             std::span<const int> states_grid,
                             std::span<const double> beta_grid) {
  ModelConfig config;
  config.domain = domain;
  config.depth = depth;
  return empirical_bayes(build_tree(data, domain, depth), config, states_grid, beta_grid);
}

}  // namespace mapt
