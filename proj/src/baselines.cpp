#include "tsp/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace tsp {

int bins_per_dimension(Index n, double p_exp) {
  if (n < 1) throw std::invalid_argument("bins_per_dimension: need n >= 1");
  const int m = static_cast<int>(std::floor(std::pow(static_cast<double>(n), p_exp)));
  return std::max(1, m);
}

Index ProductGrid::x_cells() const {
  Index m = 1;
  for (int c = 0; c < p; ++c) m *= bins(c);
  return m;
}

Index ProductGrid::y_cells() const {
  Index m = 1;
  for (int c = p; c < p + q; ++c) m *= bins(c);
  return m;
}

ProductGrid product_grid(const Dataset& data, int m, BinningMode mode) {
  if (m < 1) throw std::invalid_argument("product_grid: need m >= 1");
  const Index n = data.n();
  ProductGrid grid;
  grid.p = data.p();
  grid.q = data.q();
  grid.edges.resize(static_cast<std::size_t>(data.d()));

  std::vector<double> values(static_cast<std::size_t>(n));
  for (int c = 0; c < data.d(); ++c) {
    std::vector<double> edges;
    if (mode == BinningMode::quantile) {
      for (Index i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = data.value(i, c);
      std::sort(values.begin(), values.end());
      for (int j = 1; j < m; ++j) {
        // empirical j/m quantile: the ceil(j*n/m)-th order statistic
        const Index rank = (static_cast<Index>(j) * n + m - 1) / m;
        edges.push_back(values[static_cast<std::size_t>(rank - 1)]);
      }
    } else {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -std::numeric_limits<double>::infinity();
      for (Index i = 0; i < n; ++i) {
        lo = std::min(lo, data.value(i, c));
        hi = std::max(hi, data.value(i, c));
      }
      if (hi > lo) {
        for (int j = 1; j < m; ++j)
          edges.push_back(lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(m));
      }
    }
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    if (static_cast<int>(edges.size()) + 1 < m) {
      static bool warned = false;
      if (!warned) {
        warned = true;
        std::cerr << "warning: duplicate bin edges merged; effective bins < requested\n";
      }
    }
    grid.edges[static_cast<std::size_t>(c)] = std::move(edges);
  }
  return grid;
}

namespace {

int bin_of(const std::vector<double>& edges, double x) {
  // half-open bins (e_{t-1}, e_t]: first edge >= x names the bin
  return static_cast<int>(std::lower_bound(edges.begin(), edges.end(), x) - edges.begin());
}

// flat cell index of a coordinate block, row-major over per-coordinate bins
Index block_index(const ProductGrid& grid, const double* z, int first, int last) {
  Index idx = 0;
  for (int c = first; c < last; ++c) {
    idx = idx * grid.bins(c) + bin_of(grid.edges[static_cast<std::size_t>(c)], z[c]);
  }
  return idx;
}

struct GridCounts {
  std::vector<double> px;  // X-cell marginal probabilities
  std::vector<double> py;  // Y-cell marginal probabilities
  std::unordered_map<Index, Index> joint;  // key = x_cell * y_cells + y_cell
  Index y_cells = 1;
};

GridCounts count_cells(const Dataset& data, const ProductGrid& grid) {
  const Index mx = grid.x_cells();
  const Index my = grid.y_cells();
  if (mx > 10'000'000 || my > 10'000'000)
    throw std::runtime_error("product grid too large");
  GridCounts gc;
  gc.y_cells = my;
  std::vector<Index> cx(static_cast<std::size_t>(mx), 0);
  std::vector<Index> cy(static_cast<std::size_t>(my), 0);
  const int p = data.p();
  const int d = data.d();
  for (Index i = 0; i < data.n(); ++i) {
    const double* z = data.row(i);
    const Index xi = block_index(grid, z, 0, p);
    const Index yi = block_index(grid, z, p, d);
    ++cx[static_cast<std::size_t>(xi)];
    ++cy[static_cast<std::size_t>(yi)];
    ++gc.joint[xi * my + yi];
  }
  const double n = static_cast<double>(data.n());
  gc.px.resize(cx.size());
  gc.py.resize(cy.size());
  for (std::size_t i = 0; i < cx.size(); ++i) gc.px[i] = static_cast<double>(cx[i]) / n;
  for (std::size_t i = 0; i < cy.size(); ++i) gc.py[i] = static_cast<double>(cy[i]) / n;
  return gc;
}

double product_of(const GridCounts& gc, Index key) {
  const Index xi = key / gc.y_cells;
  const Index yi = key % gc.y_cells;
  return gc.px[static_cast<std::size_t>(xi)] * gc.py[static_cast<std::size_t>(yi)];
}

}  // namespace

// Cells with zero joint count are folded in closed form: their |P - Q| and
// (P - Q)^2 / Q contributions reduce to Q, and sum(Q) over all cells is 1.
double l1_statistic(const Dataset& data, const ProductGrid& grid) {
  const GridCounts gc = count_cells(data, grid);
  const double n = static_cast<double>(data.n());
  double occupied = 0.0;
  double q_occupied = 0.0;
  for (const auto& [key, count] : gc.joint) {
    const double pj = static_cast<double>(count) / n;
    const double q = product_of(gc, key);
    occupied += std::abs(pj - q);
    q_occupied += q;
  }
  return occupied + (1.0 - q_occupied);
}

double loglik_statistic(const Dataset& data, const ProductGrid& grid) {
  const GridCounts gc = count_cells(data, grid);
  const double n = static_cast<double>(data.n());
  double sum = 0.0;
  for (const auto& [key, count] : gc.joint) {
    const double pj = static_cast<double>(count) / n;
    sum += pj * std::log(pj / product_of(gc, key));
  }
  return sum;
}

double chi2_statistic(const Dataset& data, const ProductGrid& grid) {
  const GridCounts gc = count_cells(data, grid);
  const double n = static_cast<double>(data.n());
  double occupied = 0.0;
  double q_occupied = 0.0;
  for (const auto& [key, count] : gc.joint) {
    const double pj = static_cast<double>(count) / n;
    const double q = product_of(gc, key);
    occupied += (pj - q) * (pj - q) / q;
    q_occupied += q;
  }
  return n * (occupied + (1.0 - q_occupied));
}

double baseline_threshold_shape(BaselineKind kind, Index n, const ProductGrid& grid) {
  const double cells = static_cast<double>(grid.x_cells()) * static_cast<double>(grid.y_cells());
  const double ratio = cells / static_cast<double>(n);
  return kind == BaselineKind::l1 ? std::sqrt(ratio) : ratio;
}

BaselineDecision baseline_decide(const Dataset& data, const GridSpec& spec, BaselineKind kind) {
  if (!(spec.p_exp > 0.0 && spec.p_exp < 0.5))
    throw std::invalid_argument("baseline_decide: need p_exp in (0, 0.5)");
  if (!(spec.C >= 0.0)) throw std::invalid_argument("baseline_decide: need C >= 0");
  BaselineDecision out;
  out.m = bins_per_dimension(data.n(), spec.p_exp);
  const ProductGrid grid = product_grid(data, out.m, spec.binning);
  switch (kind) {
    case BaselineKind::l1: out.statistic = l1_statistic(data, grid); break;
    case BaselineKind::loglik: out.statistic = loglik_statistic(data, grid); break;
    case BaselineKind::chi2: out.statistic = chi2_statistic(data, grid); break;
  }
  out.threshold = spec.C * baseline_threshold_shape(kind, data.n(), grid);
  out.decision = out.statistic >= out.threshold ? 1 : 0;
  return out;
}

std::vector<AxisCell> grid_cells(const ProductGrid& grid) {
  const int d = grid.p + grid.q;
  Index total = 1;
  for (int c = 0; c < d; ++c) {
    total *= grid.bins(c);
    if (total > 100000) throw std::runtime_error("grid_cells: grid too large to materialize");
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<AxisCell> cells;
  cells.reserve(static_cast<std::size_t>(total));
  std::vector<int> digit(static_cast<std::size_t>(d), 0);
  for (Index flat = 0; flat < total; ++flat) {
    AxisCell cell;
    cell.bounds.resize(static_cast<std::size_t>(d));
    for (int c = 0; c < d; ++c) {
      const auto& edges = grid.edges[static_cast<std::size_t>(c)];
      const int b = digit[static_cast<std::size_t>(c)];
      cell.bounds[static_cast<std::size_t>(c)] =
          Interval{b == 0 ? -kInf : edges[static_cast<std::size_t>(b - 1)],
                   b == static_cast<int>(edges.size()) ? kInf : edges[static_cast<std::size_t>(b)]};
    }
    cells.push_back(std::move(cell));
    for (int c = d - 1; c >= 0; --c) {
      if (++digit[static_cast<std::size_t>(c)] < grid.bins(c)) break;
      digit[static_cast<std::size_t>(c)] = 0;
    }
  }
  return cells;
}

const char* baseline_kind_name(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::l1: return "l1";
    case BaselineKind::loglik: return "loglik";
    case BaselineKind::chi2: return "chi2";
  }
  return "?";
}

}  // namespace tsp
