#ifndef MAPT_PARTITION_TREE_HPP
#define MAPT_PARTITION_TREE_HPP

#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mapt {

/// Bounded interval [lo, hi] carrying Lebesgue measure.
struct Domain {
  double lo = 0.0;
  double hi = 1.0;

  Domain() = default;
  Domain(double lo_, double hi_);

  double width() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
  bool operator==(const Domain&) const = default;
};

/// Largest truncation depth supported by the heap-style node keys.
inline constexpr int kMaxDepth = 30;
inline constexpr int kDefaultDepth = 12;

/// Node A_{k,m} of the dyadic partition tree. The root is (0,0) and the
/// children of (k,m) are (k+1,2m) and (k+1,2m+1).
struct NodeId {
  int level = 0;
  std::uint32_t index = 0;

  NodeId left() const { return {level + 1, 2 * index}; }
  NodeId right() const { return {level + 1, 2 * index + 1}; }
  NodeId parent() const { return {level - 1, index / 2}; }
  NodeId child(bool go_right) const { return go_right ? right() : left(); }
  bool is_root() const { return level == 0; }
  bool is_left_child() const { return (index & 1U) == 0; }
  NodeId sibling() const { return {level, index ^ 1U}; }

  // 1-based heap position: root 1, children 2h and 2h+1.
  std::uint64_t key() const {
    return (std::uint64_t{1} << level) + index;
  }
  static NodeId from_key(std::uint64_t key);

  auto operator<=>(const NodeId&) const = default;
};

bool valid(NodeId id);

/// Left endpoint of the j-th cell at `level`. Every split point is computed
/// through this function so routing and interval queries agree bit-for-bit.
double cell_boundary(const Domain& domain, int level, std::uint64_t j);

/// [lo + m*w, lo + (m+1)*w) with w = (hi - lo) / 2^level.
std::pair<double, double> node_interval(NodeId id, const Domain& domain);

/// Midpoint of the node; points at or above it route to the right child.
double split_point(NodeId id, const Domain& domain);

/// The level-`level` node containing x. Throws std::domain_error when x is
/// outside the domain. The right endpoint belongs to the last cell.
NodeId locate(double x, int level, const Domain& domain);

/// Truncated dyadic partition with per-node data counts.
///
/// Only nodes with n(A) > 0 are materialized (the root always is); absent
/// nodes have n(A) = 0. Nodes are stored in depth-first pre-order, so a
/// parent always precedes its children. The data are kept sorted, and each
/// node owns the contiguous range of points that fall in it.
class CountedTree {
 public:
  struct Node {
    NodeId id;
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::int32_t left = -1;   // index into nodes(), -1 when n(A_l) = 0
    std::int32_t right = -1;  // index into nodes(), -1 when n(A_r) = 0
    std::uint32_t count() const { return end - begin; }
  };

  CountedTree() = default;

  const Domain& domain() const { return domain_; }
  int max_depth() const { return max_depth_; }
  std::size_t n_total() const { return sorted_.size(); }

  std::span<const Node> nodes() const { return nodes_; }
  const Node& node(std::size_t i) const { return nodes_[i]; }
  const Node& root() const { return nodes_.front(); }

  /// Index into nodes(), or -1 when the node is not materialized.
  std::int64_t find(NodeId id) const;
  std::uint32_t count(NodeId id) const;
  /// (n(A_l), n(A_r)) for a node with level < max_depth.
  std::pair<std::uint32_t, std::uint32_t> split_counts(NodeId id) const;

  std::span<const double> sorted_data() const { return sorted_; }
  std::span<const double> points(const Node& node) const;

 private:
  friend CountedTree build_tree(std::span<const double>, const Domain&, int);

  Domain domain_;
  int max_depth_ = kDefaultDepth;
  std::vector<double> sorted_;
  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
};

/// Routes every datum by recursive midpoint bisection down to max_depth.
/// Throws std::domain_error naming the first out-of-domain value and
/// std::invalid_argument for a depth outside [1, kMaxDepth].
CountedTree build_tree(std::span<const double> data, const Domain& domain,
                       int max_depth = kDefaultDepth);

}  // namespace mapt

#endif  // MAPT_PARTITION_TREE_HPP
