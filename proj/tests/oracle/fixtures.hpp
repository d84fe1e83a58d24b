// Randomized small fixtures and engine-versus-enumeration comparisons.
#ifndef MAPT_TESTS_FIXTURES_HPP
#define MAPT_TESTS_FIXTURES_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "mapt/density.hpp"
#include "mapt/inference_engine.hpp"
#include "oracle/brute_force.hpp"

namespace oracle {

struct Fixture {
  std::vector<double> data;
  mapt::HyperParams hp;
  std::vector<double> queries;
};

// depth 1..3, n 0..6, I 1..3, H 1..2, beta in [0, 2], uniform base on
// [0,1] or [-1,4].
inline Fixture random_fixture(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  mapt::ModelConfig c;
  c.domain = pick(0, 1) == 0 ? mapt::Domain(0.0, 1.0) : mapt::Domain(-1.0, 4.0);
  c.depth = pick(1, 3);
  c.states = pick(1, 3);
  c.H = pick(1, 2);
  c.beta = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
  c.L = std::uniform_real_distribution<double>(-1.5, 0.5)(rng);
  c.U = c.L + std::uniform_real_distribution<double>(1.0, 5.0)(rng);

  Fixture f;
  f.hp = mapt::make_hyperparams(c);
  const int n = pick(0, 6);
  // Clustered data so that local counts are lopsided and the states matter.
  const double centre = std::uniform_real_distribution<double>(c.domain.lo, c.domain.hi)(rng);
  const double spread = c.domain.width() * std::uniform_real_distribution<double>(0.02, 0.6)(rng);
  std::normal_distribution<double> g(centre, spread);
  for (int k = 0; k < n; ++k)
    f.data.push_back(std::clamp(g(rng), c.domain.lo, c.domain.hi));
  std::uniform_real_distribution<double> u(c.domain.lo, c.domain.hi);
  for (int k = 0; k < 3; ++k) f.queries.push_back(u(rng));
  f.queries.push_back(c.domain.lo + 0.3 * c.domain.width());
  return f;
}

inline double rel_err(double got, double want) {
  if (got == want) return 0.0;
  return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

struct Comparison {
  double log_marginal = 0.0;  // relative error of the marginal likelihood itself
  double transition = 0.0;    // worst error over every gamma~ entry
  double ppd = 0.0;           // worst relative error over queries, branch route
  double leaf_ppd = 0.0;      // same through the leaf sweep
};

// Transition entries are probabilities in [0, 1]; compare with a relative
// tolerance and an absolute floor far below any tested threshold.
inline double prob_err(double got, double want) {
  return std::fabs(got - want) / std::max(std::fabs(want), 1e-6);
}

inline Comparison compare_with_engine(const Fixture& f) {
  Comparison out;
  const BruteForce brute(f.hp, true);
  const Enumeration e = brute.run(f.data);

  const auto est = mapt::DensityEstimate::fit(f.data, f.hp);
  const auto& tree = est.tree();
  // Z = exp(log_marginal); the relative error of Z is |expm1(delta log Z)|.
  out.log_marginal = std::fabs(std::expm1(est.log_marginal() - std::log(e.Z)));

  const auto post = est.posterior();
  const int I = f.hp.states();
  const int K = f.hp.max_depth;
  for (int j = 0; j < I; ++j)
    out.transition = std::max(out.transition,
                              prob_err(post.init()[static_cast<std::size_t>(j)], e.own_at(1, j) / e.Z));
  for (std::uint64_t key = 2; key < (std::uint64_t{1} << K); ++key) {
    const mapt::NodeId id = mapt::NodeId::from_key(key);
    const auto idx = tree.find(id);
    const std::uint64_t parent = key / 2;
    for (int i = 0; i < I; ++i) {
      const double denom = e.own_at(parent, i);
      if (!(denom > 0.0)) continue;
      for (int j = 0; j < I; ++j) {
        const double want = e.pair_at(key, i, j) / denom;
        const double got = idx < 0 ? f.hp.trans(i, j) : post.trans(static_cast<std::size_t>(idx), i, j);
        out.transition = std::max(out.transition, prob_err(got, want));
      }
    }
  }

  const BruteForce plain(f.hp, false);
  const auto leaf = est.leaf_density();
  for (double x : f.queries) {
    auto augmented = f.data;
    augmented.push_back(x);
    const double want = plain.run(augmented).Z / e.Z;
    out.ppd = std::max(out.ppd, rel_err(est.ppd(x), want));
    out.leaf_ppd = std::max(out.leaf_ppd, rel_err(leaf(x), want));
  }
  return out;
}

}  // namespace oracle

#endif  // MAPT_TESTS_FIXTURES_HPP
