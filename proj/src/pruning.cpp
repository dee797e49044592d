#include "tsp/pruning.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tsp/penalty.hpp"

namespace tsp {

namespace {

// Divergence contribution of a single node's cell. Zero-count cells
// contribute nothing.
double node_term(double joint, double product) {
  if (joint == 0.0) return 0.0;
  if (product <= 0.0) throw std::domain_error("pruning: P > 0 with Q = 0 at a node");
  return joint * std::log(joint / product);
}

std::vector<double> per_node_terms(const Dataset& data, const TspTree& tree) {
  const double n = static_cast<double>(data.n());
  std::vector<double> terms(tree.node_count());
  for (std::size_t i = 0; i < tree.node_count(); ++i) {
    const TspNode& node = tree.node(static_cast<NodeId>(i));
    const double joint = static_cast<double>(node.count()) / n;
    terms[i] = node_term(joint, product_probability(data, node.cell));
  }
  return terms;
}

}  // namespace

EmbeddedFamily embedded_family(const Dataset& data, const TspTree& tree) {
  const std::vector<double> term = per_node_terms(data, tree);
  const std::size_t target = tree.leaf_count();

  EmbeddedFamily family;
  family.members.reserve(target);

  std::vector<NodeId> frontier{tree.root()};
  double divergence = term[static_cast<std::size_t>(tree.root())];
  family.members.push_back(LeafSet{frontier, divergence});

  while (frontier.size() < target) {
    // expand the leaf whose children add the most divergence; only the
    // expanded leaf's terms change, everything else is untouched
    std::size_t best_pos = 0;
    double best_gain = 0.0;
    bool have = false;
    for (std::size_t pos = 0; pos < frontier.size(); ++pos) {
      const TspNode& node = tree.node(frontier[pos]);
      if (node.is_leaf()) continue;
      const double gain = term[static_cast<std::size_t>(node.left)] +
                          term[static_cast<std::size_t>(node.right)] -
                          term[static_cast<std::size_t>(node.id)];
      if (!have || gain > best_gain ||
          (gain == best_gain && frontier[pos] < frontier[best_pos])) {
        have = true;
        best_gain = gain;
        best_pos = pos;
      }
    }
    if (!have) throw std::logic_error("embedded_family: frontier stuck below full size");

    const TspNode& node = tree.node(frontier[best_pos]);
    frontier[best_pos] = node.left;
    frontier.insert(frontier.begin() + static_cast<std::ptrdiff_t>(best_pos) + 1, node.right);
    divergence += best_gain;
    family.members.push_back(LeafSet{frontier, divergence});
  }
  return family;
}

Selection select_regularized(const EmbeddedFamily& family, Index n, double b, int d,
                             double delta, double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("select_regularized: alpha must be >= 0");
  if (family.members.empty()) throw std::invalid_argument("select_regularized: empty family");
  std::size_t best = 0;
  double best_obj = family.members[0].divergence;  // penalty_r(1) = 0
  for (std::size_t i = 1; i < family.members.size(); ++i) {
    const Index k = static_cast<Index>(family.members[i].size());
    const double obj = family.members[i].divergence - alpha * penalty_r(n, b, d, delta, k);
    if (obj > best_obj) {  // ties keep the smaller tree
      best_obj = obj;
      best = i;
    }
  }
  return Selection{family.members[best], best_obj};
}

namespace {

// All leaf frontiers of pruned subtrees rooted at v with exactly k leaves.
std::vector<std::vector<NodeId>> frontiers_of_size(const TspTree& tree, NodeId v, int k) {
  std::vector<std::vector<NodeId>> out;
  if (k < 1) return out;
  if (k == 1) {
    out.push_back({v});
    return out;
  }
  const TspNode& node = tree.node(v);
  if (node.is_leaf()) return out;
  for (int kl = 1; kl < k; ++kl) {
    const auto lefts = frontiers_of_size(tree, node.left, kl);
    if (lefts.empty()) continue;
    const auto rights = frontiers_of_size(tree, node.right, k - kl);
    for (const auto& lf : lefts) {
      for (const auto& rf : rights) {
        std::vector<NodeId> joined = lf;
        joined.insert(joined.end(), rf.begin(), rf.end());
        out.push_back(std::move(joined));
      }
    }
  }
  return out;
}

}  // namespace

SizedBest brute_force_best_of_size(const Dataset& data, const TspTree& tree, int k) {
  if (tree.leaf_count() > 10)
    throw std::invalid_argument("brute_force_best_of_size: full tree exceeds 10 leaves");
  if (k < 1 || static_cast<std::size_t>(k) > tree.leaf_count())
    throw std::invalid_argument("brute_force_best_of_size: k outside [1, leaf count]");

  const auto candidates = frontiers_of_size(tree, tree.root(), k);
  SizedBest best;
  bool have = false;
  for (const auto& frontier : candidates) {
    const double div = restricted_divergence(cell_measures(data, tree, frontier));
    if (!have || div > best.divergence) {
      have = true;
      best.leaf_set = LeafSet{frontier, div};
      best.divergence = div;
    }
  }
  if (!have) throw std::logic_error("brute_force_best_of_size: no subtree of requested size");
  return best;
}

}  // namespace tsp
