#include "tsp/tree.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace tsp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

bool AxisCell::contains(const double* z) const {
  return contains_block(z, 0, static_cast<int>(bounds.size()));
}

bool AxisCell::contains_block(const double* z, int first, int last) const {
  for (int c = first; c < last; ++c) {
    if (!bounds[c].contains(z[c])) return false;
  }
  return true;
}

AxisCell full_space(int d) {
  AxisCell cell;
  cell.bounds.assign(static_cast<std::size_t>(d), Interval{-kInf, kInf});
  return cell;
}

SplitResult median_split(std::span<const double> values) {
  SplitResult res;
  const Index m = static_cast<Index>(values.size());
  if (m < 2) {
    res.status = SplitStatus::refused;
    return res;
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == sorted.back()) {
    res.status = SplitStatus::degenerate;
    return res;
  }
  const Index rank = (m + 1) / 2;  // ceil(m/2)
  res.threshold = sorted[static_cast<std::size_t>(rank - 1)];
  res.status = SplitStatus::ok;
  for (Index i = 0; i < m; ++i) {
    if (values[static_cast<std::size_t>(i)] <= res.threshold)
      res.left.push_back(i);
    else
      res.right.push_back(i);
  }
  return res;
}

std::vector<NodeId> TspTree::leaves() const {
  std::vector<NodeId> out;
  for (const auto& node : nodes_) {
    if (node.is_leaf()) out.push_back(node.id);
  }
  return out;
}

std::size_t TspTree::leaf_count() const {
  std::size_t k = 0;
  for (const auto& node : nodes_) {
    if (node.is_leaf()) ++k;
  }
  return k;
}

TspTree grow_full_tree(const Dataset& data, double b) {
  if (!(b > 0.0 && b < 1.0)) throw std::invalid_argument("grow_full_tree: b must lie in (0,1)");
  const Index n = data.n();
  const int d = data.d();
  const Index min_count = static_cast<Index>(std::ceil(b * static_cast<double>(n)));

  TspTree tree;
  tree.n_ = n;
  tree.b_ = b;
  tree.d_ = d;

  TspNode root;
  root.id = 0;
  root.depth = 0;
  root.cell = full_space(d);
  root.members.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) root.members[static_cast<std::size_t>(i)] = i;
  tree.nodes_.push_back(std::move(root));

  std::deque<NodeId> queue;
  queue.push_back(0);
  std::vector<double> values;

  while (!queue.empty()) {
    const NodeId vid = queue.front();
    queue.pop_front();

    const Index m = tree.nodes_[static_cast<std::size_t>(vid)].count();
    if (m < 2 || m < 2 * min_count) continue;  // no feasible split

    // round-robin coordinate by depth, skipping degenerate coordinates
    const int depth = tree.nodes_[static_cast<std::size_t>(vid)].depth;
    SplitResult split;
    int coord = -1;
    for (int t = 0; t < d; ++t) {
      const int c = (depth + t) % d;
      values.clear();
      for (Index idx : tree.nodes_[static_cast<std::size_t>(vid)].members)
        values.push_back(data.value(idx, c));
      SplitResult attempt = median_split(values);
      if (attempt.status == SplitStatus::degenerate) continue;
      split = std::move(attempt);
      coord = c;
      break;
    }
    if (coord < 0) continue;  // all coordinates degenerate in this cell

    if (static_cast<Index>(split.left.size()) < min_count ||
        static_cast<Index>(split.right.size()) < min_count)
      continue;  // refused: probability floor would be violated

    const NodeId left_id = static_cast<NodeId>(tree.nodes_.size());
    const NodeId right_id = left_id + 1;

    TspNode left, right;
    left.id = left_id;
    right.id = right_id;
    left.depth = right.depth = depth + 1;
    {
      const TspNode& parent = tree.nodes_[static_cast<std::size_t>(vid)];
      left.cell = parent.cell;
      right.cell = parent.cell;
      left.cell.bounds[coord].hi = split.threshold;
      right.cell.bounds[coord].lo = split.threshold;
      left.members.reserve(split.left.size());
      right.members.reserve(split.right.size());
      for (Index pos : split.left) left.members.push_back(parent.members[static_cast<std::size_t>(pos)]);
      for (Index pos : split.right) right.members.push_back(parent.members[static_cast<std::size_t>(pos)]);
    }

    TspNode& parent = tree.nodes_[static_cast<std::size_t>(vid)];
    parent.split_coord = coord;
    parent.split_threshold = split.threshold;
    parent.left = left_id;
    parent.right = right_id;

    tree.nodes_.push_back(std::move(left));
    tree.nodes_.push_back(std::move(right));
    queue.push_back(left_id);
    queue.push_back(right_id);
  }
  return tree;
}

NodeId locate(const TspTree& tree, std::span<const double> point) {
  if (static_cast<int>(point.size()) != tree.dims())
    throw std::invalid_argument("locate: point dimension mismatch");
  NodeId v = tree.root();
  while (!tree.node(v).is_leaf()) {
    const TspNode& node = tree.node(v);
    v = point[static_cast<std::size_t>(node.split_coord)] <= node.split_threshold ? node.left
                                                                                  : node.right;
  }
  return v;
}

NodeId locate_in_frontier(const TspTree& tree, const std::vector<char>& frontier, const double* z) {
  NodeId v = tree.root();
  while (!frontier[static_cast<std::size_t>(v)]) {
    const TspNode& node = tree.node(v);
    if (node.is_leaf())
      throw std::logic_error("locate_in_frontier: frontier does not cover this path");
    v = z[node.split_coord] <= node.split_threshold ? node.left : node.right;
  }
  return v;
}

namespace {

void append_bound(std::string& out, double v) {
  if (std::isinf(v)) {
    out += "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace

std::string tree_to_json(const TspTree& tree, const std::string& manifest_hash) {
  std::string out;
  char buf[80];
  out += "{\n";
  if (!manifest_hash.empty()) out += "  \"manifest\": \"" + manifest_hash + "\",\n";
  std::snprintf(buf, sizeof(buf), "  \"n\": %lld,\n", static_cast<long long>(tree.n()));
  out += buf;
  std::snprintf(buf, sizeof(buf), "  \"b\": %.17g,\n", tree.b());
  out += buf;
  std::snprintf(buf, sizeof(buf), "  \"d\": %d,\n", tree.dims());
  out += buf;
  out += "  \"root\": 0,\n  \"nodes\": [\n";
  for (std::size_t i = 0; i < tree.node_count(); ++i) {
    const TspNode& node = tree.node(static_cast<NodeId>(i));
    std::snprintf(buf, sizeof(buf), "    {\"id\": %d, \"count\": %lld, \"bounds\": [",
                  node.id, static_cast<long long>(node.count()));
    out += buf;
    for (std::size_t c = 0; c < node.cell.bounds.size(); ++c) {
      if (c) out += ", ";
      out += '[';
      append_bound(out, node.cell.bounds[c].lo);
      out += ", ";
      append_bound(out, node.cell.bounds[c].hi);
      out += ']';
    }
    out += ']';
    if (!node.is_leaf()) {
      std::snprintf(buf, sizeof(buf), ", \"split_coord\": %d, \"split_threshold\": %.17g",
                    node.split_coord, node.split_threshold);
      out += buf;
      std::snprintf(buf, sizeof(buf), ", \"left\": %d, \"right\": %d", node.left, node.right);
      out += buf;
    }
    out += '}';
    if (i + 1 < tree.node_count()) out += ',';
    out += '\n';
  }
  out += "  ]\n}\n";
  return out;
}

}  // namespace tsp
