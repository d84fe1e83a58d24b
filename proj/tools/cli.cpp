#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mapt/benchmark_harness.hpp"
#include "mapt/data_io.hpp"
#include "mapt/density.hpp"
#include "mapt/empirical_bayes.hpp"
#include "mapt/model_io.hpp"
#include "mapt/scenarios.hpp"

namespace mapt::cli {

namespace {

// Shortest text that reads back to the same double.
std::string fmt(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

Domain parse_domain(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("--domain expects lo,hi");
  const std::string a = text.substr(0, comma);
  const std::string b = text.substr(comma + 1);
  char* end_a = nullptr;
  char* end_b = nullptr;
  const double lo = std::strtod(a.c_str(), &end_a);
  const double hi = std::strtod(b.c_str(), &end_b);
  if (a.empty() || b.empty() || *end_a != '\0' || *end_b != '\0')
    throw std::invalid_argument("--domain expects lo,hi, got '" + text + "'");
  return Domain(lo, hi);
}

// Flags shared by the commands that build a model from data.
struct ModelFlags {
  std::string data_path;
  std::string config_path;
  std::string domain;
  int depth = kDefaultDepth;
  int states = 6;
  double beta = 0.5;
  std::uint64_t seed = 1;
  CLI::Option* domain_opt = nullptr;
  CLI::Option* depth_opt = nullptr;
  CLI::Option* states_opt = nullptr;
  CLI::Option* beta_opt = nullptr;
  CLI::Option* seed_opt = nullptr;

  void add(CLI::App* sub, bool with_prior) {
    sub->add_option("--data", data_path, "Data file: one number per line, '#' comments")
        ->required();
    sub->add_option("--config", config_path, "JSON config file; flags override its values");
    domain_opt = sub->add_option("--domain", domain, "Sample space as lo,hi (default 0,1)");
    depth_opt = sub->add_option("--depth", depth, "Truncation depth K (default 12)")
                    ->check(CLI::Range(1, kMaxDepth));
    if (with_prior) {
      states_opt = sub->add_option("--I", states, "Number of shrinkage states (default 6)")
                       ->check(CLI::PositiveNumber);
      beta_opt = sub->add_option("--beta", beta, "Stickiness beta (default 0.5)")
                     ->check(CLI::NonNegativeNumber);
    }
    seed_opt = sub->add_option("--seed", seed, "RNG seed stored with the model (default 1)");
  }

  ModelConfig resolve() const {
    ModelConfig c = config_path.empty() ? ModelConfig{} : load_config(config_path);
    if (domain_opt->count() > 0) c.domain = parse_domain(domain);
    if (depth_opt->count() > 0) c.depth = depth;
    if (states_opt != nullptr && states_opt->count() > 0) c.states = states;
    if (beta_opt != nullptr && beta_opt->count() > 0) c.beta = beta;
    if (seed_opt->count() > 0) c.seed = seed;
    return c;
  }
};

void write_surface(std::ostream& out, const TuningResult& r) {
  out << "I,beta,log_marginal\n";
  for (const auto& p : r.surface)
    out << p.states << ',' << fmt(p.beta) << ',' << fmt(p.log_marginal) << '\n';
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f.precision(17);
  return f;
}

int cmd_fit(const ModelFlags& flags, bool tune, const std::string& out_path, std::ostream& out) {
  ModelConfig config = flags.resolve();
  const auto data = read_data_file(flags.data_path);
  CountedTree tree = build_tree(data, config.domain, config.depth);
  if (tune) {
    const auto states = default_states_grid();
    const auto betas = default_beta_grid();
    const TuningResult r = empirical_bayes(tree, config, states, betas);
    config.states = r.states;
    config.beta = r.beta;
  }
  const HyperParams hp = make_hyperparams(config);
  const DensityEstimate est(std::move(tree), hp);
  auto file = open_out(out_path);
  save_model(file, config, est, tune);
  if (!file.flush()) throw std::runtime_error("failed writing '" + out_path + "'");
  out << "log_marginal," << fmt(est.log_marginal()) << '\n';
  if (tune) out << "I," << config.states << '\n' << "beta," << fmt(config.beta) << '\n';
  return kExitOk;
}

int cmd_density(const std::string& model_path, std::size_t grid, const std::string& points_path,
                std::ostream& out) {
  const FittedModel m = load_model_file(model_path);
  const Domain& d = m.estimate.tree().domain();
  std::vector<double> xs;
  if (!points_path.empty()) {
    xs = read_data_file(points_path);
  } else {
    xs.reserve(grid);
    const double w = d.width() / static_cast<double>(grid);
    for (std::size_t j = 0; j < grid; ++j) xs.push_back(d.lo + (static_cast<double>(j) + 0.5) * w);
  }
  out << "x,ppd\n";
  for (double x : xs) out << fmt(x) << ',' << fmt(m.estimate.ppd(x)) << '\n';
  return kExitOk;
}

int cmd_sample(const std::string& model_path, int n_draws, std::uint64_t seed, bool seed_given,
               const std::string& out_path, std::ostream& out) {
  const FittedModel m = load_model_file(model_path);
  const auto& est = m.estimate;
  const auto draws = sample_posterior(est.posterior(), est.hyperparams(), est.tree(),
                                      seed_given ? seed : m.config.seed, n_draws);
  std::ofstream file;
  if (!out_path.empty()) file = open_out(out_path);
  std::ostream& sink = out_path.empty() ? out : file;
  // States are reported 1-based; state I is complete shrinkage.
  sink << "draw,level,index,state,nu,theta\n";
  for (std::size_t d = 0; d < draws.size(); ++d) {
    const auto& draw = draws[d];
    for (std::size_t k = 0; k < draw.nodes.size(); ++k) {
      sink << d << ',' << draw.nodes[k].level << ',' << draw.nodes[k].index << ','
           << draw.states[k] + 1 << ',' << fmt(draw.precisions[k].value) << ','
           << fmt(draw.pacs[k]) << '\n';
    }
  }
  return kExitOk;
}

int cmd_tune(const ModelFlags& flags, const std::string& out_path, std::ostream& out,
             std::ostream& err) {
  const ModelConfig config = flags.resolve();
  const auto data = read_data_file(flags.data_path);
  const CountedTree tree = build_tree(data, config.domain, config.depth);
  const auto states = default_states_grid();
  const auto betas = default_beta_grid();
  const TuningResult r = empirical_bayes(tree, config, states, betas);
  if (out_path.empty()) {
    write_surface(out, r);
    err << "I=" << r.states << " beta=" << fmt(r.beta) << " log_marginal=" << fmt(r.log_marginal)
        << '\n';
  } else {
    auto file = open_out(out_path);
    write_surface(file, r);
    out << "I," << r.states << '\n'
        << "beta," << fmt(r.beta) << '\n'
        << "log_marginal," << fmt(r.log_marginal) << '\n';
  }
  return kExitOk;
}

int cmd_simulate(int id, std::size_t n, std::uint64_t seed, const std::string& out_path,
                 std::ostream& out) {
  const auto xs = scenario_sample(id, n, seed);
  std::ofstream file;
  if (!out_path.empty()) file = open_out(out_path);
  std::ostream& sink = out_path.empty() ? out : file;
  sink << "# scenario " << id << ", n=" << n << ", seed=" << seed << '\n';
  for (double x : xs) sink << fmt(x) << '\n';
  return kExitOk;
}

int cmd_bench(BenchConfig config, const std::vector<std::string>& methods,
              const std::string& out_dir, std::ostream& out) {
  if (!methods.empty()) {
    config.methods.clear();
    for (const auto& m : methods) config.methods.push_back(parse_method(m));
  }
  std::filesystem::create_directories(out_dir);
  const BenchResult result = run_benchmark(config);
  const auto dir = std::filesystem::path(out_dir);
  {
    auto f = open_out((dir / "losses.csv").string());
    write_losses_csv(f, result);
  }
  {
    auto f = open_out((dir / "summary.csv").string());
    write_summary_csv(f, result);
  }
  write_summary_csv(out, result);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Markov adaptive Polya tree density estimation"};
  app.name("mapt");
  app.require_subcommand(1);

  ModelFlags fit_flags;
  bool tune = false;
  std::string fit_out;
  auto* fit = app.add_subcommand("fit", "Fit a model to a data file and save it");
  fit_flags.add(fit, true);
  fit->add_flag("--tune", tune, "Choose (I, beta) by maximum marginal likelihood first");
  fit->add_option("--out", fit_out, "Model file to write")->required();

  std::string density_model;
  std::size_t density_grid = 1024;
  std::string density_points;
  auto* density = app.add_subcommand("density", "Posterior predictive density as x,ppd CSV");
  density->add_option("--model", density_model, "Fitted model file")->required();
  auto* grid_opt = density->add_option("--grid", density_grid,
                                       "Evaluate at the midpoints of this many equal cells")
                       ->check(CLI::PositiveNumber);
  density->add_option("--points", density_points, "File of query points, one per line")
      ->excludes(grid_opt);

  std::string sample_model;
  int sample_draws = 1;
  std::uint64_t sample_seed = 1;
  std::string sample_out;
  auto* sample = app.add_subcommand("sample", "Exact joint posterior draws of (C, nu, theta)");
  sample->add_option("--model", sample_model, "Fitted model file")->required();
  sample->add_option("--draws", sample_draws, "Number of draws (default 1)")
      ->check(CLI::PositiveNumber);
  auto* sample_seed_opt =
      sample->add_option("--seed", sample_seed, "RNG seed (default: the model's seed)");
  sample->add_option("--out", sample_out, "Output CSV (default stdout)");

  ModelFlags tune_flags;
  std::string tune_out;
  auto* tune_cmd = app.add_subcommand(
      "tune", "Marginal likelihood surface over I in 2..11 and beta in 0..2 step 0.1");
  tune_flags.add(tune_cmd, false);
  tune_cmd->add_option("--out", tune_out, "Surface CSV (default stdout)");

  int sim_scenario = 1;
  std::size_t sim_n = 500;
  std::uint64_t sim_seed = 1;
  std::string sim_out;
  auto* simulate = app.add_subcommand("simulate", "Draw a data set from a simulation scenario");
  simulate->add_option("--scenario", sim_scenario, "Scenario id 1..5")
      ->required()
      ->check(CLI::Range(1, kScenarioCount));
  simulate->add_option("--n", sim_n, "Sample size (default 500)");
  simulate->add_option("--seed", sim_seed, "RNG seed (default 1)");
  simulate->add_option("--out", sim_out, "Data file (default stdout)");

  BenchConfig bench_config;
  std::vector<std::string> bench_methods;
  std::string bench_out = ".";
  auto* bench = app.add_subcommand("bench", "Repeated L1-risk comparison of MarkovAPT and PT");
  bench->add_option("--scenario", bench_config.scenarios, "Scenario ids, comma separated")
      ->delimiter(',')
      ->check(CLI::Range(1, kScenarioCount));
  bench->add_option("--sizes", bench_config.sizes, "Sample sizes, comma separated")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  bench->add_option("--replicates", bench_config.replicates, "Replicates per cell (default 50)")
      ->check(CLI::PositiveNumber);
  bench->add_option("--methods", bench_methods, "MarkovAPT and/or PT, comma separated")
      ->delimiter(',');
  bench->add_option("--seed", bench_config.seed, "Base RNG seed (default 1)");
  bench->add_option("--depth", bench_config.depth, "Truncation depth K (default 12)")
      ->check(CLI::Range(1, kMaxLeafDensityDepth));
  bench->add_option("--grid", bench_config.grid_size, "L1 Riemann grid size (default 131072)")
      ->check(CLI::PositiveNumber);
  bench->add_option("--out", bench_out, "Directory for losses.csv and summary.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitFailure;
  }

  try {
    if (*fit) return cmd_fit(fit_flags, tune, fit_out, out);
    if (*density) return cmd_density(density_model, density_grid, density_points, out);
    if (*sample)
      return cmd_sample(sample_model, sample_draws, sample_seed, sample_seed_opt->count() > 0,
                        sample_out, out);
    if (*tune_cmd) return cmd_tune(tune_flags, tune_out, out, err);
    if (*simulate) return cmd_simulate(sim_scenario, sim_n, sim_seed, sim_out, out);
    if (*bench) return cmd_bench(bench_config, bench_methods, bench_out, out);
  } catch (const ParseError& e) {
    err << "mapt: " << e.what() << '\n';
    return kExitBadData;
  } catch (const std::exception& e) {
    err << "mapt: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace mapt::cli
