#ifndef MAPT_BENCHMARK_HARNESS_HPP
#define MAPT_BENCHMARK_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "mapt/partition_tree.hpp"

namespace mapt {

enum class Method { MarkovAPT, PT };

std::string method_name(Method m);
/// Accepts "MarkovAPT"/"mapt" and "PT"/"pt"; std::invalid_argument otherwise.
Method parse_method(const std::string& name);

inline constexpr std::size_t kDefaultL1Grid = std::size_t{1} << 17;

/// Midpoint Riemann sum of |f_hat - f0| over grid_size equal cells of [0, 1].
double l1_loss(const std::function<double(double)>& f_hat, int scenario_id,
               std::size_t grid_size = kDefaultL1Grid);
/// Same sum against a precomputed f0 on the cell midpoints.
double l1_loss(const std::function<double(double)>& f_hat, std::span<const double> truth);
std::vector<double> truth_on_grid(int scenario_id, std::size_t grid_size);

struct BenchConfig {
  std::vector<int> scenarios{1, 2, 3, 4, 5};
  std::vector<std::size_t> sizes{125, 250, 500, 750, 1000, 1250};
  int replicates = 50;
  std::vector<Method> methods{Method::MarkovAPT, Method::PT};
  std::uint64_t seed = 1;
  int depth = kDefaultDepth;
  std::size_t grid_size = kDefaultL1Grid;
};

struct LossRecord {
  int scenario = 0;
  std::size_t n = 0;
  int replicate = 0;
  Method method = Method::MarkovAPT;
  double l1_loss = 0.0;
  // Empirical-Bayes choice for MarkovAPT rows; 0 otherwise.
  int states = 0;
  double beta = 0.0;
};

/// Risk per (scenario, n, method). For competitors of MarkovAPT the
/// per-replicate percentage increase in L1 loss over MarkovAPT is summarized
/// by its mean, sample sd, and one-sample t statistic; has_pct is false for
/// MarkovAPT itself or when it was not run.
struct SummaryRow {
  int scenario = 0;
  std::size_t n = 0;
  Method method = Method::MarkovAPT;
  int replicates = 0;
  double risk = 0.0;
  bool has_pct = false;
  double mean_pct_increase = 0.0;
  double sd_pct_increase = 0.0;
  double t_stat = 0.0;
};

struct BenchResult {
  std::vector<LossRecord> losses;  // scenario, n, replicate, method order
  std::vector<SummaryRow> summary;
};

/// Each replicate simulates its data from a seed derived from (seed,
/// scenario, n, replicate), fits every method (MarkovAPT tunes (I, beta) by
/// empirical Bayes on the default grids), and records the L1 loss.
/// Replicates run on the worker pool; results are assembled in index order,
/// so the output depends only on the config.
BenchResult run_benchmark(const BenchConfig& config);

void write_losses_csv(std::ostream& out, const BenchResult& result);
void write_summary_csv(std::ostream& out, const BenchResult& result);

}  // namespace mapt

#endif  // MAPT_BENCHMARK_HARNESS_HPP
