#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mapt/prior_config.hpp"

using namespace mapt;

TEST_CASE("make_components") {
  SUBCASE("I=2 on [-1,4)") {
    const auto c = make_components(2, -1.0, 4.0, 10);
    REQUIRE(c.size() == 2);
    CHECK(c[0].log10_lo == -1.0);
    CHECK(c[0].log10_hi == 4.0);
    CHECK(c[0].size() == 10);
    CHECK(c[1].point_mass_at_infinity);
  }
  SUBCASE("I=6 gives five unit-width intervals") {
    const auto c = make_components(6, -1.0, 4.0, 10);
    REQUIRE(c.size() == 6);
    for (int i = 0; i < 5; ++i) {
      CHECK(c[static_cast<std::size_t>(i)].log10_lo == doctest::Approx(-1.0 + i).epsilon(1e-15));
      CHECK(c[static_cast<std::size_t>(i)].log10_hi == doctest::Approx(i).epsilon(1e-15));
    }
    CHECK(c[5].point_mass_at_infinity);
  }
  SUBCASE("I=3 midpoints") {
    const auto c = make_components(3, 0.0, 2.0, 2);
    REQUIRE(c.size() == 3);
    const double expect[2][2] = {{0.25, 0.75}, {1.25, 1.75}};
    for (int i = 0; i < 2; ++i)
      for (int h = 0; h < 2; ++h)
        CHECK(std::log10(c[static_cast<std::size_t>(i)].quad_points[static_cast<std::size_t>(h)].value) ==
              doctest::Approx(expect[i][h]).epsilon(1e-14));
    CHECK(c[2].quad_points[0].is_infinite());
  }
  CHECK_THROWS_AS(make_components(1, -1, 4, 10), std::invalid_argument);
  CHECK_THROWS_AS(make_components(3, 4, -1, 10), std::invalid_argument);
  CHECK_THROWS_AS(make_components(3, -1, 4, 0), std::invalid_argument);
}

TEST_CASE("make_transition examples") {
  SUBCASE("I=3, beta=0") {
    const auto t = make_transition({3, 0.0, Kernel::Exponential});
    const double rows[9] = {1.0 / 3, 1.0 / 3, 1.0 / 3, 0, 0.5, 0.5, 0, 0, 1};
    for (int k = 0; k < 9; ++k) CHECK(t.matrix[static_cast<std::size_t>(k)] == doctest::Approx(rows[k]).epsilon(1e-15));
    for (double p : t.init) CHECK(p == doctest::Approx(1.0 / 3).epsilon(1e-15));
  }
  SUBCASE("I=2, any beta") {
    for (double beta : {0.0, 0.3, 1.7}) {
      const auto t = make_transition({2, beta, Kernel::Exponential});
      const double z = 1.0 + std::exp(-beta);
      CHECK(t.matrix[0] == doctest::Approx(1.0 / z).epsilon(1e-15));
      CHECK(t.matrix[1] == doctest::Approx(std::exp(-beta) / z).epsilon(1e-15));
      CHECK(t.matrix[2] == 0.0);
      CHECK(t.matrix[3] == 1.0);
    }
  }
  SUBCASE("I=1") {
    const auto t = make_transition({1, 0.7, Kernel::Exponential});
    REQUIRE(t.init.size() == 1);
    CHECK(t.init[0] == 1.0);
    REQUIRE(t.matrix.size() == 1);
    CHECK(t.matrix[0] == 1.0);
  }
  SUBCASE("uniform kernel ignores beta") {
    const auto u = make_transition({4, 2.0, Kernel::Uniform});
    const auto e = make_transition({4, 0.0, Kernel::Exponential});
    CHECK(u.matrix == e.matrix);
  }
  CHECK_THROWS_AS(make_transition({0, 0.0, Kernel::Exponential}), std::invalid_argument);
  CHECK_THROWS_AS(make_transition({3, -0.1, Kernel::Exponential}), std::invalid_argument);
}

TEST_CASE("transition matrix invariants") {
  for (int I = 1; I <= 11; ++I) {
    for (double beta : {0.0, 0.1, 0.5, 1.3, 2.0}) {
      const auto t = make_transition({I, beta, Kernel::Exponential});
      const auto uI = static_cast<std::size_t>(I);
      for (std::size_t i = 0; i < uI; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < uI; ++j) {
          const double p = t.matrix[i * uI + j];
          CHECK(p >= 0.0);
          if (j < i) CHECK(p == 0.0);
          sum += p;
        }
        CHECK(std::fabs(sum - 1.0) <= 1e-12);
        if (beta == 0.0)
          for (std::size_t j = i; j < uI; ++j)
            CHECK(t.matrix[i * uI + j] == doctest::Approx(1.0 / static_cast<double>(uI - i)).epsilon(1e-14));
      }
      for (std::size_t j = 0; j < uI; ++j) CHECK(t.matrix[(uI - 1) * uI + j] == (j == uI - 1 ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("stickiness lowers the jump to complete shrinkage") {
  const int I = 6;
  const auto uI = static_cast<std::size_t>(I);
  for (std::size_t i = 0; i + 1 < uI; ++i) {
    double prev = 2.0;
    for (double beta : {0.0, 0.2, 0.7, 1.5, 2.0}) {
      const auto t = make_transition({I, beta, Kernel::Exponential});
      const double p = t.matrix[i * uI + uI - 1];
      CHECK(p < prev);
      prev = p;
    }
  }
}

TEST_CASE("theta0 under uniform and piecewise base measures") {
  const Domain d(0, 1);
  const auto u = BaseMeasure::uniform(d);
  CHECK(theta0_for(NodeId{}, u) == 0.5);
  CHECK(theta0_for(NodeId{5, 17}, u) == 0.5);
  CHECK(u.log_mass(NodeId{3, 2}) == doctest::Approx(-3 * std::log(2.0)).epsilon(1e-15));

  const auto p = BaseMeasure::piecewise(d, {0.0, 0.5, 1.0}, {0.25, 0.75});
  CHECK(theta0_for(NodeId{}, p) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(theta0_for(NodeId{1, 1}, p) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::exp(p.log_density(0.2)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::exp(p.log_density(0.7)) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(p.cdf(0.0) == 0.0);
  CHECK(p.cdf(0.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(p.cdf(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  // log q0(x | A) integrates to one over A: constant 1.5 / 0.375 = 4 on (2,2).
  CHECK(std::exp(p.log_conditional_density(0.6, NodeId{2, 2})) == doctest::Approx(4.0).epsilon(1e-14));

  // Breakpoint off the dyadic grid.
  const auto q = BaseMeasure::piecewise(d, {0.0, 0.3, 1.0}, {0.6, 0.4});
  const double left = 0.6 * 0.25 / 0.3;
  CHECK(theta0_for(NodeId{1, 0}, q) == doctest::Approx(left / (0.6 + 0.4 * 0.2 / 0.7)).epsilon(1e-14));
  CHECK(theta0_for(NodeId{}, q) == doctest::Approx(0.6 + 0.4 * 0.2 / 0.7).epsilon(1e-14));

  CHECK_THROWS_AS(BaseMeasure::piecewise(d, {0.0, 1.0}, {0.5}), std::invalid_argument);
  CHECK_THROWS_AS(BaseMeasure::piecewise(d, {0.0, 0.5, 1.0}, {0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(BaseMeasure::piecewise(d, {0.1, 0.5, 1.0}, {0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("make_hyperparams") {
  ModelConfig c;
  c.states = 4;
  c.beta = 0.3;
  c.depth = 5;
  const auto hp = make_hyperparams(c);
  CHECK_NOTHROW(hp.validate());
  CHECK(hp.states() == 4);
  CHECK(hp.components.size() == 4);
  CHECK(hp.components.back().point_mass_at_infinity);
  CHECK(hp.max_depth == 5);
  const auto t = make_transition({4, 0.3, Kernel::Exponential});
  CHECK(hp.transition == t.matrix);
  CHECK(hp.init_probs == t.init);

  c.states = 1;
  const auto one = make_hyperparams(c);
  REQUIRE(one.components.size() == 1);
  CHECK_FALSE(one.components[0].point_mass_at_infinity);
  CHECK(one.components[0].log10_lo == c.L);
  CHECK(one.components[0].log10_hi == c.U);

  c.states = 0;
  CHECK_THROWS_AS(make_hyperparams(c), std::invalid_argument);
}

TEST_CASE("validate catches broken bundles") {
  ModelConfig c;
  c.states = 3;
  auto hp = make_hyperparams(c);
  auto broken = hp;
  broken.transition[3] = 0.2;  // below the diagonal
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
  broken = hp;
  broken.init_probs[0] += 0.1;
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
  broken = hp;
  broken.components.pop_back();
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
}

TEST_CASE("single-state hyperparameters") {
  const Domain d(0, 1);
  const auto hp = make_single_state_hyperparams(d, 4, BaseMeasure::uniform(d), StateComponent::fixed(3.0));
  CHECK_NOTHROW(hp.validate());
  CHECK(hp.states() == 1);
  CHECK(hp.components_at(2)[0].quad_points[0].value == 3.0);

  std::vector<StateComponent> per_level;
  for (int k = 0; k < 4; ++k) per_level.push_back(StateComponent::fixed(k + 1.0));
  const auto lv = make_single_state_hyperparams(d, 4, BaseMeasure::uniform(d), per_level);
  CHECK_NOTHROW(lv.validate());
  CHECK(lv.components_at(3)[0].quad_points[0].value == 4.0);
}
