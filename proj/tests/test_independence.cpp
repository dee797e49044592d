#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "tsp/independence.hpp"
#include "tsp/models.hpp"

using namespace tsp;

namespace {

Dataset diagonal_four() {
  return Dataset({0, 0, 0, 0.1, 1, 1, 1, 1.1}, 4, 1, 1);
}

Schedule recommended() {
  Schedule s;
  s.w = 0.1;
  s.l = 0.001;
  s.alpha = 2e-4;
  return s;
}

}  // namespace

TEST_CASE("schedule_at: b_n follows w * n^-l") {
  Schedule s;
  s.w = 0.1;
  s.l = 0.001;
  const auto v = schedule_at(s, 10000);
  CHECK(v.b == doctest::Approx(0.0990831944893).epsilon(1e-10));
  CHECK_FALSE(v.clamped);

  Schedule fig;
  fig.w = 0.225;  // 0.225^(d/2) with d = 2
  fig.l = 0.05;
  CHECK(schedule_at(fig, 1000).b ==
        doctest::Approx(0.225 * std::pow(1000.0, -0.05)).epsilon(1e-14));
}

TEST_CASE("schedule_at: default delta and threshold sequences") {
  Schedule s;
  const auto v = schedule_at(s, 1000);
  CHECK(v.a == doctest::Approx(5e-4).epsilon(1e-14));
  CHECK(v.delta == doctest::Approx(std::exp(-10.0)).epsilon(1e-12));
}

TEST_CASE("schedule_at: pathological b_n is clamped with a flag") {
  Schedule s;
  s.w = 5.0;
  s.l = 0.01;
  const auto v = schedule_at(s, 100);
  CHECK(v.b == doctest::Approx(1.0 - 1e-9));
  CHECK(v.clamped);
}

TEST_CASE("schedule validation") {
  Schedule s;
  s.l = 0.5;  // outside (0, 1/3)
  CHECK_THROWS_AS(schedule_at(s, 100), std::invalid_argument);
  s = Schedule{};
  s.w = 0.0;
  CHECK_THROWS_AS(schedule_at(s, 100), std::invalid_argument);
  s = Schedule{};
  s.alpha = -1.0;
  CHECK_THROWS_AS(schedule_at(s, 100), std::invalid_argument);
  s = Schedule{};
  CHECK_THROWS_AS(schedule_at(s, 0), std::invalid_argument);
}

TEST_CASE("estimate_mi: huge alpha forces the trivial partition") {
  Schedule s;
  s.w = 0.25;
  s.l = 0.001;
  s.alpha = 1e9;
  const auto est = estimate_mi(diagonal_four(), s);
  CHECK(est.mi_reported == 0.0);
  CHECK(est.statistic_nats == 0.0);
  CHECK(est.leaf_count == 1);
}

TEST_CASE("estimate_mi: alpha = 0 reports the full-tree divergence") {
  Schedule s;
  s.w = 0.25;
  s.l = 0.001;
  s.alpha = 0.0;
  const auto est = estimate_mi(diagonal_four(), s);
  const double nats = 0.5 * std::log(4.0 / 3.0);
  CHECK(est.leaf_count == 4);
  CHECK(est.statistic_nats == doctest::Approx(nats).epsilon(1e-13));
  // reported in bits by default
  CHECK(est.mi_reported == doctest::Approx(nats / std::log(2.0)).epsilon(1e-13));

  Schedule nat_s = s;
  nat_s.report_base = std::exp(1.0);
  CHECK(estimate_mi(diagonal_four(), nat_s).mi_reported ==
        doctest::Approx(nats).epsilon(1e-13));
}

TEST_CASE("decide_independence: threshold comparison in nats") {
  Schedule s;
  s.w = 0.25;
  s.l = 0.001;
  s.alpha = 0.0;
  // statistic 0.1438 nats vs a_4 = 0.125
  const auto dec = decide_independence(diagonal_four(), s);
  CHECK(dec.decision == 1);
  CHECK(dec.statistic_nats >= dec.threshold);
  CHECK(dec.leaf_count == 4);
}

TEST_CASE("decide_independence: structural zero forces decision 0") {
  Schedule s;
  s.w = 0.25;
  s.l = 0.001;
  s.alpha = 1e9;
  Schedule tiny_threshold = s;
  tiny_threshold.a_rule = [](Index) { return 1e-300; };
  for (const auto& sched : {s, tiny_threshold}) {
    const auto dec = decide_independence(diagonal_four(), sched);
    CHECK(dec.leaf_count == 1);
    CHECK(dec.statistic_nats == 0.0);
    CHECK(dec.decision == 0);
  }
}

TEST_CASE("decision is invariant under strictly increasing coordinate maps") {
  ModelConfig model;
  model.kind = ModelKind::gaussian;
  model.sigma = 0.6;
  const auto data = sample(model, 600, 17);
  std::vector<double> mapped(static_cast<std::size_t>(data.n()) * 2);
  for (Index i = 0; i < data.n(); ++i)
    for (int c = 0; c < 2; ++c) {
      const double x = data.value(i, c);
      mapped[static_cast<std::size_t>(i) * 2 + c] = x * x * x;
    }
  const Dataset data2(std::move(mapped), data.n(), 1, 1);

  Schedule s;
  s.w = 0.1;
  s.l = 0.1;
  s.alpha = 1e-4;
  const auto d1 = decide_independence(data, s);
  const auto d2 = decide_independence(data2, s);
  CHECK(d1.statistic_nats == d2.statistic_nats);  // counts are identical, so bit-equal
  CHECK(d1.leaf_count == d2.leaf_count);
  CHECK(d1.decision == d2.decision);
}

TEST_CASE("MI estimate stays within [0, full-tree divergence]") {
  ModelConfig model;
  model.kind = ModelKind::gaussian;
  model.sigma = 0.5;
  const auto data = sample(model, 800, 3);
  Schedule s;
  s.w = 0.08;
  s.l = 0.05;
  Schedule full = s;
  full.alpha = 0.0;
  const double cap = estimate_mi(data, full).statistic_nats;
  for (double alpha : {0.0, 1e-5, 1e-4, 1e-3, 1e-1, 100.0}) {
    s.alpha = alpha;
    const auto est = estimate_mi(data, s);
    CHECK(est.statistic_nats >= 0.0);
    CHECK(est.statistic_nats <= cap + 1e-15);
  }
}

TEST_CASE("H0 collapse at desk scale") {
  // small-n surrogate of the structural-detection run: the selected tree
  // should collapse to the root for almost every H0 draw
  ModelConfig h0;
  h0.kind = ModelKind::gaussian;
  h0.sigma = 0.0;
  const Schedule s = recommended();
  int collapsed = 0;
  const int trials = 30;
  for (int t = 0; t < trials; ++t) {
    const auto data = sample(h0, 2000, 1000 + static_cast<std::uint64_t>(t));
    const auto dec = decide_independence(data, s);
    if (dec.leaf_count == 1) {
      ++collapsed;
      CHECK(dec.decision == 0);
    }
  }
  CHECK(collapsed >= 27);
}

TEST_CASE("estimate_mi requires at least two samples") {
  const Dataset one({1.0, 2.0}, 1, 1, 1);
  Schedule s;
  CHECK_THROWS_AS(estimate_mi(one, s), std::invalid_argument);
}

TEST_CASE("estimate_mi works on multivariate blocks") {
  ModelConfig model;
  model.kind = ModelKind::gaussian_multi;
  model.pairs = 2;
  model.sigma = 0.7;
  const auto data = sample(model, 8000, 23);
  Schedule s;
  s.w = 0.050625;  // heuristic w for d = 4
  s.l = 0.001;
  s.alpha = 1e-5;
  const auto est = estimate_mi(data, s);
  CHECK(est.statistic_nats > 0.0);
  CHECK(est.leaf_count >= 16);
  // the estimate is a restricted divergence, so it cannot exceed the truth by
  // much more than the finite-sample fluctuation
  CHECK(est.mi_reported < 2.0 * gaussian_mi(0.7, 2));
}
