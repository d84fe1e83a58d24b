#ifndef MAPT_EMPIRICAL_BAYES_HPP
#define MAPT_EMPIRICAL_BAYES_HPP

#include <span>
#include <vector>

#include "mapt/partition_tree.hpp"
#include "mapt/prior_config.hpp"

namespace mapt {

struct TuningPoint {
  int states = 0;
  double beta = 0.0;
  double log_marginal = 0.0;
};

struct TuningResult {
  int states = 0;
  double beta = 0.0;
  double log_marginal = 0.0;
  std::vector<TuningPoint> surface;  // I-major, then beta, in grid order
};

std::vector<int> default_states_grid();    // {2, ..., 11}
std::vector<double> default_beta_grid();   // {0.0, 0.1, ..., 2.0}

/// Maximum marginal likelihood estimate of (I, beta) by exhaustive grid
/// evaluation. `base` supplies domain, depth, L, U, H and the base measure;
/// its states/beta are ignored. Ties go to the smaller I, then the smaller
/// beta. Grid points for distinct I run on the worker pool.
TuningResult empirical_bayes(const CountedTree& tree, const ModelConfig& base,
                             std::span<const int> states_grid,
                             std::span<const double> beta_grid);

TuningResult empirical_bayes(std::span<const double> data, const Domain& domain, int depth,
                             std::span<const int> states_grid,
                             std::span<const double> beta_grid);

}  // namespace mapt

#endif  // MAPT_EMPIRICAL_BAYES_HPP
