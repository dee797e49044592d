#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "tsp/baselines.hpp"
#include "tsp/measures.hpp"
#include "tsp/models.hpp"

using namespace tsp;

namespace {

constexpr double kLn2 = 0.6931471805599453;

Dataset diagonal_four() {
  return Dataset({0, 0, 0, 0.1, 1, 1, 1, 1.1}, 4, 1, 1);
}

Dataset product_four() {
  return Dataset({0, 0, 0, 1, 1, 0, 1, 1}, 4, 1, 1);
}

}  // namespace

TEST_CASE("bins_per_dimension: floor(n^p) clamped to >= 1") {
  CHECK(bins_per_dimension(1000, 0.2) == 3);
  CHECK(bins_per_dimension(1000, 0.25) == 5);
  CHECK(bins_per_dimension(2, 0.1) == 1);
}

TEST_CASE("product_grid: m = 1 is the single cell R^d") {
  const auto data = diagonal_four();
  const auto grid = product_grid(data, 1);
  CHECK(grid.x_cells() == 1);
  CHECK(grid.y_cells() == 1);
  const auto cells = grid_cells(grid);
  REQUIRE(cells.size() == 1);
  CHECK(std::isinf(cells[0].bounds[0].lo));
  CHECK(std::isinf(cells[0].bounds[1].hi));
}

TEST_CASE("product_grid: quantile edges of 1..9 with m = 3") {
  std::vector<double> pts;
  for (int i = 1; i <= 9; ++i) {
    pts.push_back(i);
    pts.push_back(10 - i);  // second coordinate, same multiset
  }
  const Dataset data(std::move(pts), 9, 1, 1);
  const auto grid = product_grid(data, 3);
  REQUIRE(grid.edges[0].size() == 2);
  CHECK(grid.edges[0][0] == 3.0);
  CHECK(grid.edges[0][1] == 6.0);
  CHECK(grid.edges[1][0] == 3.0);
  CHECK(grid.edges[1][1] == 6.0);
}

TEST_CASE("product_grid: duplicate quantiles merge bins") {
  std::vector<double> pts;
  for (double x : {1.0, 1.0, 1.0, 1.0, 2.0}) {
    pts.push_back(x);
    pts.push_back(x);
  }
  const Dataset data(std::move(pts), 5, 1, 1);
  const auto grid = product_grid(data, 3);
  CHECK(grid.bins(0) == 2);  // effective bins reduced
}

TEST_CASE("product_grid: equal-width mode") {
  std::vector<double> pts;
  for (int i = 0; i <= 9; ++i) {
    pts.push_back(i);
    pts.push_back(i);
  }
  const Dataset data(std::move(pts), 10, 1, 1);
  const auto grid = product_grid(data, 2, BinningMode::equal_width);
  REQUIRE(grid.edges[0].size() == 1);
  CHECK(grid.edges[0][0] == doctest::Approx(4.5));
}

TEST_CASE("statistics on the diagonal dataset") {
  const auto data = diagonal_four();
  const auto grid = product_grid(data, 2);
  CHECK(l1_statistic(data, grid) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(loglik_statistic(data, grid) == doctest::Approx(kLn2).epsilon(1e-14));
  CHECK(chi2_statistic(data, grid) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("statistics vanish on product-arranged data") {
  const auto data = product_four();
  const auto grid = product_grid(data, 2);
  CHECK(l1_statistic(data, grid) == doctest::Approx(0.0));
  CHECK(loglik_statistic(data, grid) == doctest::Approx(0.0));
  CHECK(chi2_statistic(data, grid) == doctest::Approx(0.0));
}

TEST_CASE("statistics are invariant under strictly increasing maps") {
  ModelConfig model;
  model.kind = ModelKind::gaussian;
  model.sigma = 0.4;
  const auto data = sample(model, 500, 9);
  std::vector<double> mapped(static_cast<std::size_t>(data.n()) * 2);
  for (Index i = 0; i < data.n(); ++i)
    for (int c = 0; c < 2; ++c) {
      const double x = data.value(i, c);
      mapped[static_cast<std::size_t>(i) * 2 + c] = std::atan(x) * 3.0;
    }
  const Dataset data2(std::move(mapped), data.n(), 1, 1);
  for (int m : {2, 4, 7}) {
    const auto g1 = product_grid(data, m);
    const auto g2 = product_grid(data2, m);
    CHECK(l1_statistic(data, g1) == l1_statistic(data2, g2));
    CHECK(loglik_statistic(data, g1) == loglik_statistic(data2, g2));
    CHECK(chi2_statistic(data, g1) == chi2_statistic(data2, g2));
  }
}

TEST_CASE("loglik on a grid equals the restricted divergence on its cells") {
  ModelConfig model;
  model.kind = ModelKind::gaussian;
  model.sigma = 0.55;
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const auto data = sample(model, 300, seed);
    for (int m : {2, 3, 5}) {
      const auto grid = product_grid(data, m);
      const auto cells = grid_cells(grid);
      const double direct = loglik_statistic(data, grid);
      const double via_measures = restricted_divergence(cell_measures(data, cells));
      CHECK(std::abs(direct - via_measures) <= 1e-12);
    }
  }
}

TEST_CASE("chi2 and loglik agree to first order near independence") {
  ModelConfig h0;
  h0.kind = ModelKind::gaussian;
  h0.sigma = 0.0;
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto data = sample(h0, 5000, seed);
    const auto grid = product_grid(data, 3);
    const double ll = loglik_statistic(data, grid);
    const double c2 = chi2_statistic(data, grid);
    CHECK(ll >= 0.0);
    CHECK(c2 >= 0.0);
    if (ll > 0.0 && ll < 1e-3) {
      CHECK(std::abs(c2 / (2.0 * static_cast<double>(data.n())) - ll) <= 10.0 * ll);
      ++checked;
    }
  }
  CHECK(checked >= 4);  // the regime actually occurred
}

TEST_CASE("baseline_decide: threshold endpoints") {
  const auto diag = diagonal_four();
  GridSpec spec;
  spec.p_exp = 0.3;

  spec.C = 1e12;
  CHECK(baseline_decide(diag, spec, BaselineKind::loglik).decision == 0);

  spec.C = 0.0;
  CHECK(baseline_decide(diag, spec, BaselineKind::loglik).decision == 1);

  spec.C = 1e-9;
  const auto prod = product_four();
  for (auto kind : {BaselineKind::l1, BaselineKind::loglik, BaselineKind::chi2})
    CHECK(baseline_decide(prod, spec, kind).decision == 0);
}

TEST_CASE("baseline threshold shapes") {
  ModelConfig model;
  model.kind = ModelKind::gaussian;
  const auto data = sample(model, 1000, 4);
  const auto grid = product_grid(data, 3);
  const double cells = 9.0;
  CHECK(baseline_threshold_shape(BaselineKind::l1, data.n(), grid) ==
        doctest::Approx(std::sqrt(cells / 1000.0)));
  CHECK(baseline_threshold_shape(BaselineKind::loglik, data.n(), grid) ==
        doctest::Approx(cells / 1000.0));
  CHECK(baseline_threshold_shape(BaselineKind::chi2, data.n(), grid) ==
        doctest::Approx(cells / 1000.0));
}

TEST_CASE("baseline_decide validates the spec") {
  const auto data = diagonal_four();
  GridSpec spec;
  spec.p_exp = 0.7;
  CHECK_THROWS_AS(baseline_decide(data, spec, BaselineKind::l1), std::invalid_argument);
  spec.p_exp = 0.2;
  spec.C = -1.0;
  CHECK_THROWS_AS(baseline_decide(data, spec, BaselineKind::l1), std::invalid_argument);
}

TEST_CASE("statistics are nonnegative and vanish only at exact product counts") {
  ModelConfig model;
  model.kind = ModelKind::gaussian;
  model.sigma = 0.8;
  const auto data = sample(model, 400, 12);
  const auto grid = product_grid(data, 4);
  CHECK(l1_statistic(data, grid) > 0.0);
  CHECK(loglik_statistic(data, grid) > 0.0);
  CHECK(chi2_statistic(data, grid) > 0.0);
}
