#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "mapt/benchmark_harness.hpp"
#include "mapt/density.hpp"
#include "mapt/parallel.hpp"
#include "mapt/random.hpp"
#include "mapt/scenarios.hpp"
#include "oracle/scenario_oracle.hpp"

using namespace mapt;

using oracle::CdfOracle;
using oracle::integrate_pdf;
using oracle::ks_distance;

TEST_CASE("scenario pdf values") {
  CHECK(scenario_pdf(1, 0.1) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(scenario_pdf(1, 0.2025) == doctest::Approx(0.2 + 0.2 / 0.005).epsilon(1e-12));
  // 0.1*1 + 0.3*4 + 0.4 * [6 t (1 - t) / 0.25 at t = 1/2] + 0.2*Beta(6000,4000) ~ 0.
  CHECK(scenario_pdf(2, 0.375) == doctest::Approx(3.7).epsilon(1e-12));
  // Scenario 5 is Beta(10, 20): 1 / B(10, 20) * 0.3^9 * 0.7^19.
  const double b = std::exp(std::lgamma(30.0) - std::lgamma(10.0) - std::lgamma(20.0));
  CHECK(scenario_pdf(5, 0.3) == doctest::Approx(b * std::pow(0.3, 9) * std::pow(0.7, 19)).epsilon(1e-12));
  // Scenario 2 near its spike: 0.1 + 0.2 * Beta(6000,4000) at the mode.
  const double mode = 5999.0 / 9998.0;
  const double log_b = std::lgamma(10000.0) - std::lgamma(6000.0) - std::lgamma(4000.0);
  CHECK(scenario_pdf(2, mode) == doctest::Approx(0.1 + 0.2 * std::exp(log_b + 5999 * std::log(mode) + 3999 * std::log1p(-mode))).epsilon(1e-9));
  CHECK_THROWS_AS(scenario_pdf(1, 1.2), std::domain_error);
  CHECK_THROWS_AS(scenario(6), std::invalid_argument);
  for (int id = 1; id <= 5; ++id) {
    double w = 0.0;
    for (const auto& c : scenario(id).components) w += c.weight;
    CHECK(w == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("scenario pdfs integrate to one") {
  for (int id = 1; id <= 5; ++id) {
    INFO("scenario " << id);
    CHECK(std::fabs(integrate_pdf(id) - 1.0) < 1e-8);
  }
}

TEST_CASE("scenario samplers") {
  CHECK(scenario_sample(2, 0, 1).empty());
  CHECK(scenario_sample(3, 50, 9) == scenario_sample(3, 50, 9));
  CHECK(scenario_sample(3, 50, 9) != scenario_sample(3, 50, 10));
  for (int id = 1; id <= 5; ++id) {
    INFO("scenario " << id);
    const auto xs = scenario_sample(id, 100000, 1000 + static_cast<std::uint64_t>(id));
    for (double x : xs) {
      bool covered = false;
      for (const auto& c : scenario(id).components) covered = covered || (x >= c.lo && x <= c.hi);
      CHECK(covered);
    }
    CHECK(ks_distance(xs, CdfOracle(id)) < 0.01);
  }
}

TEST_CASE("random helpers") {
  CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
  CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
  CHECK(derive_seed(1, {2}) != derive_seed(2, {2}));
  Rng rng(5);
  double s = 0.0;
  const int n = 200000;
  for (int k = 0; k < n; ++k) s += sample_beta(rng, 2.0, 6.0);
  CHECK(std::fabs(s / n - 0.25) < 0.002);
  // Tiny shapes stay inside the open interval.
  for (int k = 0; k < 1000; ++k) {
    const double v = sample_beta(rng, 1e-3, 1e-3);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }
  CHECK(std::isfinite(sample_log_gamma(rng, 1e-6)));
}

TEST_CASE("L1 loss") {
  CHECK(l1_loss([](double x) { return scenario_pdf(4, x); }, 4) == 0.0);
  // Independent 40-digit quadrature of |1 - Beta(10,20) pdf|.
  CHECK(std::fabs(l1_loss([](double) { return 1.0; }, 5) - 1.2517520507888165615) < 1e-4);
  const auto truth = truth_on_grid(5, 1024);
  CHECK(truth.size() == 1024);
  CHECK(l1_loss([](double) { return 1.0; }, truth) == l1_loss([](double) { return 1.0; }, 5, 1024));

  // A leaf-constant estimate: refining the grid changes the loss only by
  // the quadrature error of the smooth truth.
  const auto data = scenario_sample(5, 300, 4);
  ModelConfig c;
  const auto est = DensityEstimate::fit(data, make_hyperparams(c));
  const auto leaf = est.leaf_density();
  const auto f = [&](double x) { return leaf(x); };
  const double a = l1_loss(f, 5, std::size_t{1} << 17);
  const double b = l1_loss(f, 5, std::size_t{1} << 18);
  CHECK(std::fabs(a - b) < 1e-6);
}

TEST_CASE("methods parse") {
  CHECK(parse_method("MarkovAPT") == Method::MarkovAPT);
  CHECK(parse_method("mapt") == Method::MarkovAPT);
  CHECK(parse_method("PT") == Method::PT);
  CHECK(parse_method("pt") == Method::PT);
  CHECK_THROWS_AS(parse_method("OPT"), std::invalid_argument);
  CHECK(method_name(Method::PT) == "PT");
}

TEST_CASE("benchmark bookkeeping and determinism") {
  BenchConfig cfg;
  cfg.sizes = {125};
  cfg.replicates = 1;
  cfg.methods = {Method::PT};
  cfg.grid_size = std::size_t{1} << 13;
  const auto r = run_benchmark(cfg);
  REQUIRE(r.losses.size() == 5);
  for (int id = 1; id <= 5; ++id) {
    CHECK(r.losses[static_cast<std::size_t>(id - 1)].scenario == id);
    CHECK(r.losses[static_cast<std::size_t>(id - 1)].n == 125);
  }
  REQUIRE(r.summary.size() == 5);
  for (const auto& row : r.summary) CHECK_FALSE(row.has_pct);

  std::ostringstream a1, a2, b1, b2;
  write_losses_csv(a1, r);
  write_summary_csv(b1, r);
  const auto again = run_benchmark(cfg);
  write_losses_csv(a2, again);
  write_summary_csv(b2, again);
  CHECK(a1.str() == a2.str());
  CHECK(b1.str() == b2.str());
  CHECK(a1.str().rfind("scenario,n,replicate,method,l1_loss\n", 0) == 0);
  CHECK(b1.str().rfind("scenario,n,method,replicates,risk,mean_pct_increase,sd_pct_increase,t_stat\n", 0) == 0);

  cfg.seed = 2;
  std::ostringstream c1;
  write_losses_csv(c1, run_benchmark(cfg));
  CHECK(c1.str() != a1.str());
}

TEST_CASE("benchmark summary arithmetic") {
  BenchConfig cfg;
  cfg.scenarios = {5};
  cfg.sizes = {125};
  cfg.replicates = 3;
  cfg.depth = 8;
  cfg.grid_size = std::size_t{1} << 12;
  const auto r = run_benchmark(cfg);
  REQUIRE(r.losses.size() == 6);
  std::vector<double> apt, pt;
  for (const auto& l : r.losses) {
    (l.method == Method::MarkovAPT ? apt : pt).push_back(l.l1_loss);
    if (l.method == Method::MarkovAPT) {
      CHECK(l.states >= 2);
      CHECK(l.states <= 11);
    }
  }
  REQUIRE(apt.size() == 3);
  std::vector<double> pct;
  for (std::size_t k = 0; k < 3; ++k) pct.push_back(100.0 * (pt[k] - apt[k]) / apt[k]);
  const double mean = (pct[0] + pct[1] + pct[2]) / 3.0;
  double ss = 0.0;
  for (double p : pct) ss += (p - mean) * (p - mean);
  const double sd = std::sqrt(ss / 2.0);

  REQUIRE(r.summary.size() == 2);
  const auto& row_apt = r.summary[0].method == Method::MarkovAPT ? r.summary[0] : r.summary[1];
  const auto& row_pt = r.summary[0].method == Method::PT ? r.summary[0] : r.summary[1];
  CHECK(row_apt.risk == doctest::Approx((apt[0] + apt[1] + apt[2]) / 3).epsilon(1e-14));
  CHECK(row_pt.risk == doctest::Approx((pt[0] + pt[1] + pt[2]) / 3).epsilon(1e-14));
  CHECK_FALSE(row_apt.has_pct);
  REQUIRE(row_pt.has_pct);
  CHECK(row_pt.mean_pct_increase == doctest::Approx(mean).epsilon(1e-12));
  CHECK(row_pt.sd_pct_increase == doctest::Approx(sd).epsilon(1e-12));
  CHECK(row_pt.t_stat == doctest::Approx(mean / (sd / std::sqrt(3.0))).epsilon(1e-12));
}

TEST_CASE("parallel_for runs every index once") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 7) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
  CHECK(worker_count() >= 1);
}
