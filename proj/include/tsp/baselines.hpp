#pragma once

#include <span>
#include <vector>

#include "tsp/dataset.hpp"
#include "tsp/tree.hpp"

namespace tsp {

enum class BaselineKind { l1, loglik, chi2 };

enum class BinningMode {
  quantile,    // equiprobable marginal bins (default; scale-free)
  equal_width  // deviation knob: evenly spaced edges between min and max
};

// Non-adaptive product partition with m(n) = floor(n^p_exp) bins per
// dimension and decision threshold C * c_kind(n, m).
struct GridSpec {
  double p_exp = 0.2;  // in (0, 0.5)
  double C = 1.0;
  BinningMode binning = BinningMode::quantile;
};

// Product grid over R^d: per-coordinate sorted inner edges; bins are
// half-open, outer bins unbounded. Duplicate quantile edges are merged, so
// the effective bin count per coordinate may be smaller than requested.
struct ProductGrid {
  std::vector<std::vector<double>> edges;  // one vector per coordinate
  int p = 1;
  int q = 1;

  int bins(int coord) const { return static_cast<int>(edges[coord].size()) + 1; }
  Index x_cells() const;
  Index y_cells() const;
};

int bins_per_dimension(Index n, double p_exp);

ProductGrid product_grid(const Dataset& data, int m, BinningMode mode = BinningMode::quantile);

double l1_statistic(const Dataset& data, const ProductGrid& grid);
double loglik_statistic(const Dataset& data, const ProductGrid& grid);  // nats
double chi2_statistic(const Dataset& data, const ProductGrid& grid);

// Threshold shape c_kind(n, m): sqrt(mx*my/n) for L1, mx*my/n otherwise.
double baseline_threshold_shape(BaselineKind kind, Index n, const ProductGrid& grid);

struct BaselineDecision {
  int decision = 0;
  double statistic = 0.0;
  double threshold = 0.0;
  int m = 1;  // requested bins per dimension
};

BaselineDecision baseline_decide(const Dataset& data, const GridSpec& spec, BaselineKind kind);

// Materialized grid cells (for debugging and cross-module identity tests);
// intended for small grids only.
std::vector<AxisCell> grid_cells(const ProductGrid& grid);

const char* baseline_kind_name(BaselineKind kind);

}  // namespace tsp
