#include "mapt/benchmark_harness.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <stdexcept>

#include "mapt/baselines.hpp"
#include "mapt/density.hpp"
#include "mapt/empirical_bayes.hpp"
#include "mapt/parallel.hpp"
#include "mapt/random.hpp"
#include "mapt/scenarios.hpp"

namespace mapt {

std::string method_name(Method m) { return m == Method::MarkovAPT ? "MarkovAPT" : "PT"; }

Method parse_method(const std::string& name) {
  if (name == "MarkovAPT" || name == "mapt" || name == "markov-apt") return Method::MarkovAPT;
  if (name == "PT" || name == "pt") return Method::PT;
  throw std::invalid_argument("unknown method '" + name + "' (expected MarkovAPT or PT)");
}

std::vector<double> truth_on_grid(int scenario_id, std::size_t grid_size) {
  if (grid_size < 1) throw std::invalid_argument("grid_size must be >= 1");
  const Scenario& s = scenario(scenario_id);
  std::vector<double> truth(grid_size);
  const double h = 1.0 / static_cast<double>(grid_size);
  for (std::size_t j = 0; j < grid_size; ++j) truth[j] = s.pdf((j + 0.5) * h);
  return truth;
}

double l1_loss(const std::function<double(double)>& f_hat, std::span<const double> truth) {
  if (truth.empty()) throw std::invalid_argument("grid_size must be >= 1");
  const double h = 1.0 / static_cast<double>(truth.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < truth.size(); ++j) acc += std::abs(f_hat((j + 0.5) * h) - truth[j]);
  return acc * h;
}

double l1_loss(const std::function<double(double)>& f_hat, int scenario_id,
               std::size_t grid_size) {
  return l1_loss(f_hat, truth_on_grid(scenario_id, grid_size));
}

namespace {

struct Job {
  int scenario;
  std::size_t n;
  int replicate;
};

}  // namespace

BenchResult run_benchmark(const BenchConfig& config) {
  if (config.replicates < 1) throw std::invalid_argument("replicates must be >= 1");
  if (config.methods.empty()) throw std::invalid_argument("at least one method is required");
  for (int id : config.scenarios) (void)scenario(id);

  std::map<int, std::vector<double>> truth;
  for (int id : config.scenarios) truth.emplace(id, truth_on_grid(id, config.grid_size));

  std::vector<Job> jobs;
  for (int id : config.scenarios)
    for (std::size_t n : config.sizes)
      for (int r = 0; r < config.replicates; ++r) jobs.push_back({id, n, r});

  const Domain unit{0.0, 1.0};
  const std::size_t nm = config.methods.size();
  std::vector<LossRecord> losses(jobs.size() * nm);
  parallel_for(jobs.size(), [&](std::size_t k) {
    const Job& job = jobs[k];
    const auto seed = derive_seed(config.seed, {static_cast<std::uint64_t>(job.scenario),
                                                static_cast<std::uint64_t>(job.n),
                                                static_cast<std::uint64_t>(job.replicate)});
    const auto data = scenario_sample(job.scenario, job.n, seed);
    const auto& f0 = truth.at(job.scenario);
    for (std::size_t m = 0; m < nm; ++m) {
      LossRecord rec{job.scenario, job.n, job.replicate, config.methods[m], 0.0, 0, 0.0};
      LeafDensity fhat;
      if (config.methods[m] == Method::MarkovAPT) {
        ModelConfig mc;
        mc.domain = unit;
        mc.depth = config.depth;
        CountedTree tree = build_tree(data, unit, config.depth);
        const auto states = default_states_grid();
        const auto betas = default_beta_grid();
        const TuningResult tuned = empirical_bayes(tree, mc, states, betas);
        mc.states = tuned.states;
        mc.beta = tuned.beta;
        rec.states = tuned.states;
        rec.beta = tuned.beta;
        fhat = DensityEstimate(std::move(tree), make_hyperparams(mc)).leaf_density();
      } else {
        PTSpec spec;
        spec.base = BaseMeasure::uniform(unit);
        spec.max_depth = config.depth;
        fhat = pt_fit(data, spec, unit).leaf_density();
      }
      rec.l1_loss = l1_loss([&](double x) { return fhat(x); }, f0);
      losses[k * nm + m] = rec;
    }
  });

  BenchResult result;
  result.losses = losses;

  // Summaries: fold over replicates in index order.
  std::size_t k = 0;
  for (int id : config.scenarios) {
    for (std::size_t n : config.sizes) {
      const std::size_t first = k * nm;
      const auto R = static_cast<std::size_t>(config.replicates);
      std::ptrdiff_t ref = -1;
      for (std::size_t m = 0; m < nm; ++m)
        if (config.methods[m] == Method::MarkovAPT) ref = static_cast<std::ptrdiff_t>(m);
      for (std::size_t m = 0; m < nm; ++m) {
        SummaryRow row;
        row.scenario = id;
        row.n = n;
        row.method = config.methods[m];
        row.replicates = config.replicates;
        double sum = 0.0;
        std::vector<double> pct;
        for (std::size_t r = 0; r < R; ++r) {
          const double loss = losses[first + r * nm + m].l1_loss;
          sum += loss;
          if (ref >= 0 && static_cast<std::size_t>(ref) != m) {
            const double base = losses[first + r * nm + static_cast<std::size_t>(ref)].l1_loss;
            pct.push_back((loss - base) / base * 100.0);
          }
        }
        row.risk = sum / static_cast<double>(R);
        if (!pct.empty()) {
          row.has_pct = true;
          double mean = 0.0;
          for (double p : pct) mean += p;
          mean /= static_cast<double>(pct.size());
          double ss = 0.0;
          for (double p : pct) ss += (p - mean) * (p - mean);
          const double sd = pct.size() > 1 ? std::sqrt(ss / static_cast<double>(pct.size() - 1)) : 0.0;
          row.mean_pct_increase = mean;
          row.sd_pct_increase = sd;
          row.t_stat = sd > 0.0 ? mean / (sd / std::sqrt(static_cast<double>(pct.size()))) : 0.0;
        }
        result.summary.push_back(row);
      }
      k += R;
    }
  }
  return result;
}

void write_losses_csv(std::ostream& out, const BenchResult& result) {
  out << "scenario,n,replicate,method,l1_loss\n" << std::setprecision(17);
  for (const auto& r : result.losses)
    out << r.scenario << ',' << r.n << ',' << r.replicate << ',' << method_name(r.method) << ','
        << r.l1_loss << '\n';
}

void write_summary_csv(std::ostream& out, const BenchResult& result) {
  out << "scenario,n,method,replicates,risk,mean_pct_increase,sd_pct_increase,t_stat\n"
      << std::setprecision(17);
  for (const auto& r : result.summary) {
    out << r.scenario << ',' << r.n << ',' << method_name(r.method) << ',' << r.replicates << ','
        << r.risk << ',';
    if (r.has_pct)
      out << r.mean_pct_increase << ',' << r.sd_pct_increase << ',' << r.t_stat << '\n';
    else
      out << "NA,NA,NA\n";
  }
}

}  // namespace mapt
