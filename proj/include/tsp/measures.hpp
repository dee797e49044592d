#pragma once

#include <span>
#include <vector>

#include "tsp/dataset.hpp"
#include "tsp/tree.hpp"

namespace tsp {

// Per-cell empirical joint and product-of-marginals probabilities.
struct CellMeasures {
  std::vector<double> joint;    // P-hat
  std::vector<double> product;  // Q-hat-star
  std::vector<Index> counts;
};

// Fraction of points whose X block lies in the cell's X box times the
// fraction whose Y block lies in its Y box.
double product_probability(const Dataset& data, const AxisCell& cell);

// Leaf sets of a tree. P-hat comes from stored member counts; Q-hat-star is
// the product of the X-box and Y-box marginal frequencies over the full data.
CellMeasures cell_measures(const Dataset& data, const TspTree& tree, std::span<const NodeId> leaves);

// Arbitrary product-cell partitions (grids, hand-built partitions). Throws if
// some point lies in no cell.
CellMeasures cell_measures(const Dataset& data, std::span<const AxisCell> cells);

std::vector<double> empirical_joint(const Dataset& data, const TspTree& tree, std::span<const NodeId> leaves);
std::vector<double> empirical_product(const Dataset& data, const TspTree& tree, std::span<const NodeId> leaves);

// sum_A P(A) ln(P(A)/Q(A)) in nats, with 0*ln(0/q) := 0. Throws on an
// absolute-continuity violation (P > 0 with Q = 0), which cannot happen for
// measures produced by this module.
double restricted_divergence(const CellMeasures& m);
double restricted_divergence(std::span<const double> joint, std::span<const double> product);

// Per-sample quantized log-likelihood ratio (1/n) sum_i ln(P(cell_i)/Q(cell_i)).
// Algebraically identical to restricted_divergence of the same measures; the
// two are computed along different routes so the identity is testable.
double quantized_log_likelihood(const Dataset& data, const TspTree& tree, std::span<const NodeId> leaves);
double quantized_log_likelihood(const Dataset& data, std::span<const AxisCell> cells);

}  // namespace tsp
