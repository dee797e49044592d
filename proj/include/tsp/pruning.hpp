#pragma once

#include <span>
#include <vector>

#include "tsp/dataset.hpp"
#include "tsp/measures.hpp"
#include "tsp/tree.hpp"

namespace tsp {

// Leaf frontier of a pruned subtree sharing the full tree's root; the cells
// of these leaves partition R^d.
struct LeafSet {
  std::vector<NodeId> leaves;
  double divergence = 0.0;  // nats, cached

  std::size_t size() const { return leaves.size(); }
};

// F = (LeafSet_1, ..., LeafSet_K): member k has exactly k leaves, each member
// extends the previous one by expanding a single leaf, and divergence values
// are nondecreasing in k.
struct EmbeddedFamily {
  std::vector<LeafSet> members;

  std::size_t size() const { return members.size(); }
};

// Greedy forward construction of the maximum-empirical-information trees:
// at step k the leaf whose expansion maximizes the divergence is expanded.
// Ties prefer the smaller node id.
EmbeddedFamily embedded_family(const Dataset& data, const TspTree& tree);

struct Selection {
  LeafSet leaf_set;
  double objective = 0.0;  // divergence - alpha * penalty, nats
};

// argmax over the family of D_k - alpha * penalty_r(n, b, d, delta, k);
// ties break toward the smaller tree.
Selection select_regularized(const EmbeddedFamily& family, Index n, double b, int d,
                             double delta, double alpha);

// Exhaustive test oracle: enumerates every pruned subtree with exactly k
// leaves and recomputes each divergence from scratch. Refuses full trees with
// more than 10 leaves.
struct SizedBest {
  LeafSet leaf_set;
  double divergence = 0.0;
};
SizedBest brute_force_best_of_size(const Dataset& data, const TspTree& tree, int k);

}  // namespace tsp
