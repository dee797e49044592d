#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tsp/dataset.hpp"

namespace tsp {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

// Half-open interval (lo, hi]; lo = -inf / hi = +inf on outer frontiers.
struct Interval {
  double lo;
  double hi;
  bool contains(double x) const { return lo < x && x <= hi; }
};

// Product of per-coordinate intervals. Always factors into an X-block box
// times a Y-block box when the coordinate split d = p + q is applied.
struct AxisCell {
  std::vector<Interval> bounds;

  bool contains(const double* z) const;
  // membership of a coordinate block [first, last)
  bool contains_block(const double* z, int first, int last) const;
};

AxisCell full_space(int d);

enum class SplitStatus {
  ok,
  refused,     // fewer than 2 values
  degenerate,  // all values identical; this coordinate cannot split the cell
};

struct SplitResult {
  SplitStatus status = SplitStatus::refused;
  double threshold = 0.0;
  std::vector<Index> left;   // positions with value <= threshold
  std::vector<Index> right;  // the rest
};

// Statistically equivalent split: threshold is the ceil(m/2)-th order
// statistic (the lower median for even m).
SplitResult median_split(std::span<const double> values);

struct TspNode {
  NodeId id = kNoNode;
  int depth = 0;
  AxisCell cell;
  std::vector<Index> members;  // row indices into the growing dataset
  int split_coord = -1;        // -1 for leaves
  double split_threshold = 0.0;
  NodeId left = kNoNode;
  NodeId right = kNoNode;

  bool is_leaf() const { return left == kNoNode; }
  Index count() const { return static_cast<Index>(members.size()); }
};

// Full tree produced by the growing phase. Immutable after construction.
class TspTree {
 public:
  const TspNode& node(NodeId id) const { return nodes_[static_cast<std::size_t>(id)]; }
  NodeId root() const { return 0; }
  std::size_t node_count() const { return nodes_.size(); }
  Index n() const { return n_; }
  double b() const { return b_; }
  int dims() const { return d_; }

  std::vector<NodeId> leaves() const;
  std::size_t leaf_count() const;

 private:
  friend TspTree grow_full_tree(const Dataset& data, double b);
  std::vector<TspNode> nodes_;
  Index n_ = 0;
  double b_ = 0.0;
  int d_ = 0;
};

// Recursive statistically-equivalent splitting with probability floor b:
// the split coordinate cycles round-robin by depth (degenerate coordinates
// are skipped), and a split is performed only when both children would hold
// at least ceil(b*n) points.
TspTree grow_full_tree(const Dataset& data, double b);

// Leaf containing the point; ties at a threshold go left (half-open cells).
NodeId locate(const TspTree& tree, std::span<const double> point);

// Descend until a node flagged as frontier is reached. `frontier` is indexed
// by node id and must mark the leaf set of a pruned subtree.
NodeId locate_in_frontier(const TspTree& tree, const std::vector<char>& frontier, const double* z);

// Serialization for golden-file comparisons; the optional manifest hash ties
// a dump to the run that produced it.
std::string tree_to_json(const TspTree& tree, const std::string& manifest_hash = "");

}  // namespace tsp
