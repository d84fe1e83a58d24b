#include "mapt/partition_tree.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mapt {

Domain::Domain(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    std::ostringstream msg;
    msg << "invalid domain [" << lo << ", " << hi
        << "]: endpoints must be finite with lo < hi";
    throw std::invalid_argument(msg.str());
  }
}

NodeId NodeId::from_key(std::uint64_t key) {
  if (key == 0) throw std::invalid_argument("node key must be positive");
  const int level = std::bit_width(key) - 1;
  return {level, static_cast<std::uint32_t>(key - (std::uint64_t{1} << level))};
}

bool valid(NodeId id) {
  return id.level >= 0 && id.level <= kMaxDepth &&
         std::uint64_t{id.index} < (std::uint64_t{1} << id.level);
}

double cell_boundary(const Domain& domain, int level, std::uint64_t j) {
  if (j >= (std::uint64_t{1} << level)) return domain.hi;
  return domain.lo + static_cast<double>(j) * std::ldexp(domain.width(), -level);
}

std::pair<double, double> node_interval(NodeId id, const Domain& domain) {
  return {cell_boundary(domain, id.level, id.index),
          cell_boundary(domain, id.level, std::uint64_t{id.index} + 1)};
}

double split_point(NodeId id, const Domain& domain) {
  return cell_boundary(domain, id.level + 1, 2 * std::uint64_t{id.index} + 1);
}

NodeId locate(double x, int level, const Domain& domain) {
  if (!domain.contains(x)) {
    std::ostringstream msg;
    msg << "value " << x << " lies outside the domain [" << domain.lo << ", "
        << domain.hi << "]";
    throw std::domain_error(msg.str());
  }
  if (level < 0 || level > kMaxDepth)
    throw std::invalid_argument("locate: level out of range");
  NodeId id{};
  while (id.level < level) id = id.child(x >= split_point(id, domain));
  return id;
}

std::int64_t CountedTree::find(NodeId id) const {
  if (!valid(id)) return -1;
  auto it = index_.find(id.key());
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::uint32_t CountedTree::count(NodeId id) const {
  const auto i = find(id);
  return i < 0 ? 0U : nodes_[static_cast<std::size_t>(i)].count();
}

std::pair<std::uint32_t, std::uint32_t> CountedTree::split_counts(NodeId id) const {
  return {count(id.left()), count(id.right())};
}

std::span<const double> CountedTree::points(const Node& node) const {
  return std::span<const double>(sorted_).subspan(node.begin, node.count());
}

namespace {

struct TreeBuilder {
  const Domain& domain;
  int max_depth;
  const std::vector<double>& sorted;
  std::vector<CountedTree::Node>& nodes;
  std::unordered_map<std::uint64_t, std::uint32_t>& index;

  std::int32_t add(NodeId id, std::uint32_t begin, std::uint32_t end) {
    const auto slot = static_cast<std::uint32_t>(nodes.size());
    nodes.push_back({id, begin, end, -1, -1});
    index.emplace(id.key(), slot);
    if (id.level < max_depth && end > begin) {
      const double mid = split_point(id, domain);
      const auto first = sorted.begin();
      const auto cut = static_cast<std::uint32_t>(
          std::lower_bound(first + begin, first + end, mid) - first);
      if (cut > begin) nodes[slot].left = add(id.left(), begin, cut);
      if (end > cut) nodes[slot].right = add(id.right(), cut, end);
    }
    return static_cast<std::int32_t>(slot);
  }
};

}  // namespace

CountedTree build_tree(std::span<const double> data, const Domain& domain,
                       int max_depth) {
  if (max_depth < 1 || max_depth > kMaxDepth) {
    std::ostringstream msg;
    msg << "max_depth must lie in [1, " << kMaxDepth << "], got " << max_depth;
    throw std::invalid_argument(msg.str());
  }
  for (double x : data) {
    if (!domain.contains(x)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "datum " << x << " lies outside the domain [" << domain.lo << ", "
          << domain.hi << "]";
      throw std::domain_error(msg.str());
    }
  }
  CountedTree tree;
  tree.domain_ = domain;
  tree.max_depth_ = max_depth;
  tree.sorted_.assign(data.begin(), data.end());
  std::sort(tree.sorted_.begin(), tree.sorted_.end());
  tree.nodes_.reserve(tree.sorted_.size() * static_cast<std::size_t>(max_depth + 1) + 1);

  TreeBuilder builder{domain, max_depth, tree.sorted_, tree.nodes_, tree.index_};
  builder.add(NodeId{}, 0, static_cast<std::uint32_t>(tree.sorted_.size()));
  return tree;
}

}  // namespace mapt
