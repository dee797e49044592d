#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tsp/baselines.hpp"
#include "tsp/dataset.hpp"
#include "tsp/independence.hpp"
#include "tsp/models.hpp"

namespace tsp {

// Ordered sample sizes n_1 < ... < n_G at which the running test is
// evaluated; discretizes the detection-time definitions.
struct SizeGrid {
  std::vector<Index> sizes;

  static SizeGrid log_grid(int points_per_decade, Index n_min, Index n_max);
  Index n_max() const { return sizes.back(); }
};

enum class Hypothesis { H0, H1 };

// One trial of a running test over the grid. t_tilde is the largest grid
// size with the wrong decision (0 if never wrong); a trial still wrong at
// n_G is censored with t_tilde = n_G.
struct DetectionRecord {
  std::uint64_t seed = 0;
  std::vector<std::uint8_t> decisions;  // one bit per grid size
  Index t_tilde = 0;
  bool censored = false;
};

std::vector<DetectionRecord> detection_times(const ModelConfig& model, const Schedule& schedule,
                                             const SizeGrid& grid, int trials,
                                             std::uint64_t master_seed, Hypothesis hypothesis,
                                             int jobs = 1);

// Records for a baseline test (decision depends on C, not alpha).
std::vector<DetectionRecord> baseline_detection_times(const ModelConfig& model,
                                                      const GridSpec& spec, BaselineKind kind,
                                                      const SizeGrid& grid, int trials,
                                                      std::uint64_t master_seed,
                                                      Hypothesis hypothesis, int jobs = 1);

struct ComplexityResult {
  Index value = 0;        // grid size attaining the 1-eps quantile
  bool censored = false;  // quantile unattainable (>= eps fraction censored)
};

// Smallest grid m with fraction of { t_tilde <= m } at least 1 - eps;
// censored records never count as <= m.
ComplexityResult sampling_complexity(std::span<const DetectionRecord> records,
                                     const SizeGrid& grid, double eps);

struct TradeoffPoint {
  double param = 0.0;  // alpha for the TSP test, C for baselines
  ComplexityResult m0;
  ComplexityResult m1;
};

struct TradeoffCurve {
  std::vector<TradeoffPoint> points;  // sorted by param
  double eps = 0.05;
};

// For each alpha: M0(eps) under the null version of the model and M1(eps)
// under the model itself, with trial seeds shared across alpha values.
TradeoffCurve tradeoff_sweep(const ModelConfig& model_h1, const Schedule& schedule_base,
                             std::span<const double> alphas, double eps, int trials,
                             std::uint64_t master_seed, const SizeGrid& grid, int jobs = 1);

TradeoffCurve baseline_tradeoff_sweep(const ModelConfig& model_h1, double p_exp,
                                      BaselineKind kind, std::span<const double> c_values,
                                      double eps, int trials, std::uint64_t master_seed,
                                      const SizeGrid& grid, int jobs = 1,
                                      BinningMode binning = BinningMode::quantile);

// w = C^(p_exp * d): shrinks the probability floor with dimension so the
// growing phase can partition every coordinate at least once.
double heuristic_w(int d, double C, double p_exp);

struct SignificanceResult {
  double rejection_fraction = 0.0;
  double half_width = 0.0;  // binomial 95% half-width
  int trials = 0;
};

SignificanceResult significance_estimate(const ModelConfig& model_h0, const Schedule& schedule,
                                         Index n, int trials, std::uint64_t master_seed,
                                         int jobs = 1);

}  // namespace tsp
