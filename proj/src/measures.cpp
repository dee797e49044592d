#include "tsp/measures.hpp"

#include <cmath>
#include <stdexcept>

namespace tsp {

double product_probability(const Dataset& data, const AxisCell& cell) {
  const int p = data.p();
  const int d = data.d();
  const Index n = data.n();
  Index cx = 0, cy = 0;
  for (Index i = 0; i < n; ++i) {
    const double* z = data.row(i);
    if (cell.contains_block(z, 0, p)) ++cx;
    if (cell.contains_block(z, p, d)) ++cy;
  }
  return (static_cast<double>(cx) / static_cast<double>(n)) *
         (static_cast<double>(cy) / static_cast<double>(n));
}

CellMeasures cell_measures(const Dataset& data, const TspTree& tree,
                           std::span<const NodeId> leaves) {
  CellMeasures m;
  m.joint.reserve(leaves.size());
  m.product.reserve(leaves.size());
  m.counts.reserve(leaves.size());
  const double n = static_cast<double>(data.n());
  for (NodeId id : leaves) {
    const TspNode& node = tree.node(id);
    m.counts.push_back(node.count());
    m.joint.push_back(static_cast<double>(node.count()) / n);
    m.product.push_back(product_probability(data, node.cell));
  }
  return m;
}

CellMeasures cell_measures(const Dataset& data, std::span<const AxisCell> cells) {
  CellMeasures m;
  m.counts.assign(cells.size(), 0);
  const Index n = data.n();
  for (Index i = 0; i < n; ++i) {
    const double* z = data.row(i);
    bool found = false;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].contains(z)) {
        ++m.counts[c];
        found = true;
        break;
      }
    }
    if (!found)
      throw std::runtime_error("cell_measures: point " + std::to_string(i) +
                               " lies in no cell; cells do not partition the space");
  }
  m.joint.resize(cells.size());
  m.product.resize(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    m.joint[c] = static_cast<double>(m.counts[c]) / static_cast<double>(n);
    m.product[c] = product_probability(data, cells[c]);
  }
  return m;
}

std::vector<double> empirical_joint(const Dataset& data, const TspTree& tree,
                                    std::span<const NodeId> leaves) {
  std::vector<double> out;
  out.reserve(leaves.size());
  const double n = static_cast<double>(data.n());
  for (NodeId id : leaves) out.push_back(static_cast<double>(tree.node(id).count()) / n);
  return out;
}

std::vector<double> empirical_product(const Dataset& data, const TspTree& tree,
                                      std::span<const NodeId> leaves) {
  std::vector<double> out;
  out.reserve(leaves.size());
  for (NodeId id : leaves) out.push_back(product_probability(data, tree.node(id).cell));
  return out;
}

double restricted_divergence(std::span<const double> joint, std::span<const double> product) {
  if (joint.size() != product.size())
    throw std::invalid_argument("restricted_divergence: size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    const double pj = joint[i];
    if (pj == 0.0) continue;  // 0 * log(0/q) := 0
    const double q = product[i];
    if (q <= 0.0)
      throw std::domain_error("restricted_divergence: P > 0 with Q = 0 on cell " +
                              std::to_string(i));
    sum += pj * std::log(pj / q);
  }
  return sum;
}

double restricted_divergence(const CellMeasures& m) {
  return restricted_divergence(m.joint, m.product);
}

namespace {

double per_sample_sum(const Dataset& data, const std::vector<double>& joint,
                      const std::vector<double>& product,
                      const std::vector<std::size_t>& cell_of_row) {
  double sum = 0.0;
  for (Index i = 0; i < data.n(); ++i) {
    const std::size_t c = cell_of_row[static_cast<std::size_t>(i)];
    sum += std::log(joint[c] / product[c]);
  }
  return sum / static_cast<double>(data.n());
}

}  // namespace

double quantized_log_likelihood(const Dataset& data, const TspTree& tree,
                                std::span<const NodeId> leaves) {
  std::vector<char> frontier(tree.node_count(), 0);
  std::vector<std::size_t> slot(tree.node_count(), 0);
  for (std::size_t j = 0; j < leaves.size(); ++j) {
    frontier[static_cast<std::size_t>(leaves[j])] = 1;
    slot[static_cast<std::size_t>(leaves[j])] = j;
  }
  const auto joint = empirical_joint(data, tree, leaves);
  const auto product = empirical_product(data, tree, leaves);
  std::vector<std::size_t> cell_of_row(static_cast<std::size_t>(data.n()));
  for (Index i = 0; i < data.n(); ++i) {
    const NodeId leaf = locate_in_frontier(tree, frontier, data.row(i));
    cell_of_row[static_cast<std::size_t>(i)] = slot[static_cast<std::size_t>(leaf)];
  }
  return per_sample_sum(data, joint, product, cell_of_row);
}

double quantized_log_likelihood(const Dataset& data, std::span<const AxisCell> cells) {
  const CellMeasures m = cell_measures(data, cells);
  std::vector<std::size_t> cell_of_row(static_cast<std::size_t>(data.n()));
  for (Index i = 0; i < data.n(); ++i) {
    const double* z = data.row(i);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].contains(z)) {
        cell_of_row[static_cast<std::size_t>(i)] = c;
        break;
      }
    }
  }
  return per_sample_sum(data, m.joint, m.product, cell_of_row);
}

}  // namespace tsp
