#include <doctest.h>

#include <algorithm>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "mapt/data_io.hpp"
#include "mapt/partition_tree.hpp"

using namespace mapt;

namespace {

std::uint32_t n_at(const CountedTree& t, int k, std::uint32_t m) { return t.count(NodeId{k, m}); }

}  // namespace

TEST_CASE("build_tree on empty data") {
  const std::vector<double> data;
  const auto t = build_tree(data, Domain(0, 1), 2);
  CHECK(t.n_total() == 0);
  for (int k = 0; k <= 2; ++k)
    for (std::uint32_t m = 0; m < (1U << k); ++m) CHECK(n_at(t, k, m) == 0);
  CHECK(t.nodes().size() == 1);
}

TEST_CASE("build_tree routes through half-open dyadic cells") {
  const std::vector<double> data{0.1, 0.3, 0.9};
  const auto t = build_tree(data, Domain(0, 1), 2);
  CHECK(n_at(t, 0, 0) == 3);
  CHECK(n_at(t, 1, 0) == 2);
  CHECK(n_at(t, 1, 1) == 1);
  CHECK(n_at(t, 2, 0) == 1);
  CHECK(n_at(t, 2, 1) == 1);
  CHECK(n_at(t, 2, 2) == 0);
  CHECK(n_at(t, 2, 3) == 1);
}

// 0.1 and 0.3 both fall in [0, 0.5) at level 1 but split at level 2:
// 0.1 in [0, 0.25), 0.3 in [0.25, 0.5).
TEST_CASE("level-2 cells of the three-point example") {
  const std::vector<double> data{0.1, 0.3, 0.9};
  const auto t = build_tree(data, Domain(0, 1), 2);
  CHECK(t.split_counts(NodeId{1, 0}) == std::pair<std::uint32_t, std::uint32_t>{1, 1});
  CHECK(t.split_counts(NodeId{1, 1}) == std::pair<std::uint32_t, std::uint32_t>{0, 1});
}

TEST_CASE("boundary point goes right") {
  const std::vector<double> data{0.5};
  const auto t = build_tree(data, Domain(0, 1), 1);
  CHECK(n_at(t, 1, 0) == 0);
  CHECK(n_at(t, 1, 1) == 1);
}

TEST_CASE("right endpoint belongs to the last cell") {
  const std::vector<double> data{1.0, 0.0};
  const auto t = build_tree(data, Domain(0, 1), 4);
  CHECK(n_at(t, 4, 15) == 1);
  CHECK(n_at(t, 4, 0) == 1);
}

TEST_CASE("build_tree rejects out-of-domain data and bad depth") {
  const std::vector<double> bad{0.2, 1.5};
  CHECK_THROWS_AS(build_tree(bad, Domain(0, 1), 3), std::domain_error);
  try {
    build_tree(bad, Domain(0, 1), 3);
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("1.5") != std::string::npos);
  }
  const std::vector<double> ok{0.2};
  CHECK_THROWS_AS(build_tree(ok, Domain(0, 1), 0), std::invalid_argument);
  CHECK_THROWS_AS(build_tree(ok, Domain(0, 1), kMaxDepth + 1), std::invalid_argument);
}

TEST_CASE("Domain validation") {
  CHECK_THROWS(Domain(1, 1));
  CHECK_THROWS(Domain(2, 1));
  CHECK_THROWS(Domain(0, std::numeric_limits<double>::infinity()));
  CHECK_NOTHROW(Domain(-1, 4));
}

TEST_CASE("node_interval") {
  auto iv = node_interval(NodeId{0, 0}, Domain(0, 1));
  CHECK(iv.first == 0.0);
  CHECK(iv.second == 1.0);
  iv = node_interval(NodeId{2, 3}, Domain(0, 1));
  CHECK(iv.first == 0.75);
  CHECK(iv.second == 1.0);
  iv = node_interval(NodeId{1, 0}, Domain(-1, 4));
  CHECK(iv.first == -1.0);
  CHECK(iv.second == 1.5);
}

TEST_CASE("locate") {
  CHECK(locate(0.0, 3, Domain(0, 1)) == NodeId{3, 0});
  CHECK(locate(1.0, 3, Domain(0, 1)) == NodeId{3, 7});
  CHECK(locate(0.26, 2, Domain(0, 1)) == NodeId{2, 1});
  CHECK(locate(0.25, 2, Domain(0, 1)) == NodeId{2, 1});
  CHECK_THROWS_AS(locate(-0.01, 2, Domain(0, 1)), std::domain_error);
  CHECK_THROWS_AS(locate(1.01, 2, Domain(0, 1)), std::domain_error);
}

TEST_CASE("NodeId navigation and heap keys") {
  const NodeId a{3, 5};
  CHECK(a.left() == NodeId{4, 10});
  CHECK(a.right() == NodeId{4, 11});
  CHECK(a.parent() == NodeId{2, 2});
  CHECK(a.sibling() == NodeId{3, 4});
  CHECK(a.key() == 13);
  CHECK(NodeId::from_key(13) == a);
  CHECK(NodeId::from_key(1) == NodeId{});
  CHECK(valid(a));
  CHECK_FALSE(valid(NodeId{2, 4}));
}

TEST_CASE("tree invariants on random data") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 4.0);
  std::vector<double> data(400);
  for (auto& x : data) x = u(rng);
  data.push_back(-1.0);
  data.push_back(4.0);
  data.push_back(1.5);
  const Domain dom(-1, 4);
  const int K = 7;
  const auto t = build_tree(data, dom, K);
  CHECK(t.root().count() == data.size());
  CHECK(t.n_total() == data.size());

  SUBCASE("children sum to parent") {
    for (const auto& node : t.nodes()) {
      if (node.id.level == K) continue;
      const auto [l, r] = t.split_counts(node.id);
      CHECK(l + r == node.count());
    }
  }
  SUBCASE("every level sums to n") {
    for (int k = 0; k <= K; ++k) {
      std::size_t total = 0;
      for (std::uint32_t m = 0; m < (1U << k); ++m) total += t.count(NodeId{k, m});
      CHECK(total == data.size());
    }
  }
  SUBCASE("counts agree with locate") {
    for (int k = 0; k <= K; ++k) {
      std::vector<std::uint32_t> expect(std::size_t{1} << k, 0);
      for (double x : data) ++expect[locate(x, k, dom).index];
      for (std::uint32_t m = 0; m < (1U << k); ++m) CHECK(t.count(NodeId{k, m}) == expect[m]);
    }
  }
  SUBCASE("node points lie in the node interval") {
    for (const auto& node : t.nodes()) {
      for (double x : t.points(node)) CHECK(locate(x, node.id.level, dom) == node.id);
    }
  }
  SUBCASE("pre-order: parents precede children") {
    for (std::size_t i = 0; i < t.nodes().size(); ++i) {
      const auto& node = t.node(i);
      if (node.left >= 0) CHECK(static_cast<std::size_t>(node.left) > i);
      if (node.right >= 0) CHECK(static_cast<std::size_t>(node.right) > i);
    }
  }
  SUBCASE("only non-empty nodes are materialized") {
    for (std::size_t i = 1; i < t.nodes().size(); ++i) CHECK(t.node(i).count() > 0);
  }
  SUBCASE("permutation invariance") {
    auto shuffled = data;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto t2 = build_tree(shuffled, dom, K);
    REQUIRE(t2.nodes().size() == t.nodes().size());
    for (std::size_t i = 0; i < t.nodes().size(); ++i) {
      CHECK(t2.node(i).id == t.node(i).id);
      CHECK(t2.node(i).count() == t.node(i).count());
    }
  }
}

TEST_CASE("parse_data skips blanks and comments and reports bad lines") {
  std::istringstream ok("# header\n0.25\n\n  0.5  \n   # indented comment\n1e-3\n");
  const auto v = parse_data(ok);
  REQUIRE(v.size() == 3);
  CHECK(v[0] == 0.25);
  CHECK(v[1] == 0.5);
  CHECK(v[2] == 1e-3);

  std::istringstream bad("0.1\n0.2\nabc\n");
  try {
    parse_data(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::istringstream trailing("0.1 0.2\n");
  CHECK_THROWS_AS(parse_data(trailing), ParseError);
  std::istringstream nan_line("nan\n");
  CHECK_THROWS_AS(parse_data(nan_line), ParseError);
}
