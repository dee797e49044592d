#include "tsp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "tsp/measures.hpp"
#include "tsp/penalty.hpp"
#include "tsp/rng.hpp"
#include "tsp/tree.hpp"

namespace tsp {

SizeGrid SizeGrid::log_grid(int points_per_decade, Index n_min, Index n_max) {
  if (points_per_decade < 1) throw std::invalid_argument("log_grid: need points_per_decade >= 1");
  if (n_min < 2 || n_max <= n_min) throw std::invalid_argument("log_grid: need 2 <= n_min < n_max");
  SizeGrid grid;
  const double e0 = std::log10(static_cast<double>(n_min));
  const double e1 = std::log10(static_cast<double>(n_max));
  for (int k = 0;; ++k) {
    const double ex = e0 + static_cast<double>(k) / points_per_decade;
    if (ex >= e1 - 1e-12) break;
    const Index v = static_cast<Index>(std::llround(std::pow(10.0, ex)));
    if (v >= n_max) break;
    if (grid.sizes.empty() || v > grid.sizes.back()) grid.sizes.push_back(v);
  }
  grid.sizes.push_back(n_max);
  return grid;
}

namespace {

void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(jobs));
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (int i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

DetectionRecord record_from_decisions(std::vector<std::uint8_t> decisions, const SizeGrid& grid,
                                      Hypothesis hypothesis, std::uint64_t seed) {
  const std::uint8_t wrong = hypothesis == Hypothesis::H0 ? 1 : 0;
  DetectionRecord rec;
  rec.seed = seed;
  rec.t_tilde = 0;
  for (std::size_t g = 0; g < decisions.size(); ++g) {
    if (decisions[g] == wrong) rec.t_tilde = grid.sizes[g];
  }
  rec.censored = !decisions.empty() && decisions.back() == wrong;
  rec.decisions = std::move(decisions);
  return rec;
}

// Decisions of the TSP test over the grid for every alpha at once: the grown
// tree and the embedded family are alpha-independent, only the regularized
// selection changes.
std::vector<std::vector<std::uint8_t>> tsp_trial_decisions(const ModelConfig& model,
                                                           const Schedule& base,
                                                           std::span<const double> alphas,
                                                           const SizeGrid& grid,
                                                           std::uint64_t seed) {
  const Dataset stream = sample(model, grid.n_max(), seed);
  std::vector<std::vector<std::uint8_t>> out(
      alphas.size(), std::vector<std::uint8_t>(grid.sizes.size(), 0));
  for (std::size_t g = 0; g < grid.sizes.size(); ++g) {
    const Index n = grid.sizes[g];
    const Dataset data = stream.prefix(n);
    const ScheduleValues sv = schedule_at(base, n);
    const TspTree tree = grow_full_tree(data, sv.b);
    const EmbeddedFamily family = embedded_family(data, tree);
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      const Selection sel =
          select_regularized(family, n, sv.b, data.d(), sv.delta, alphas[a]);
      out[a][g] = sel.leaf_set.divergence >= sv.a ? 1 : 0;
    }
  }
  return out;
}

std::vector<std::vector<std::uint8_t>> baseline_trial_decisions(const ModelConfig& model,
                                                                double p_exp, BaselineKind kind,
                                                                BinningMode binning,
                                                                std::span<const double> c_values,
                                                                const SizeGrid& grid,
                                                                std::uint64_t seed) {
  const Dataset stream = sample(model, grid.n_max(), seed);
  std::vector<std::vector<std::uint8_t>> out(
      c_values.size(), std::vector<std::uint8_t>(grid.sizes.size(), 0));
  for (std::size_t g = 0; g < grid.sizes.size(); ++g) {
    const Index n = grid.sizes[g];
    const Dataset data = stream.prefix(n);
    const int m = bins_per_dimension(n, p_exp);
    const ProductGrid pgrid = product_grid(data, m, binning);
    double stat = 0.0;
    switch (kind) {
      case BaselineKind::l1: stat = l1_statistic(data, pgrid); break;
      case BaselineKind::loglik: stat = loglik_statistic(data, pgrid); break;
      case BaselineKind::chi2: stat = chi2_statistic(data, pgrid); break;
    }
    const double shape = baseline_threshold_shape(kind, n, pgrid);
    for (std::size_t c = 0; c < c_values.size(); ++c)
      out[c][g] = stat >= c_values[c] * shape ? 1 : 0;
  }
  return out;
}

// records[param][trial]
template <typename TrialFn>
std::vector<std::vector<DetectionRecord>> run_trials(int trials, int jobs, std::size_t params,
                                                     const SizeGrid& grid, Hypothesis hypothesis,
                                                     std::uint64_t master_seed,
                                                     const TrialFn& trial_fn) {
  if (trials < 1) throw std::invalid_argument("detection harness: need trials >= 1");
  std::vector<std::vector<DetectionRecord>> records(
      params, std::vector<DetectionRecord>(static_cast<std::size_t>(trials)));
  parallel_for(trials, jobs, [&](int t) {
    const std::uint64_t seed = derive_seed(master_seed, static_cast<std::uint64_t>(t));
    auto decisions = trial_fn(seed);
    for (std::size_t a = 0; a < params; ++a)
      records[a][static_cast<std::size_t>(t)] =
          record_from_decisions(std::move(decisions[a]), grid, hypothesis, seed);
  });
  return records;
}

}  // namespace

std::vector<DetectionRecord> detection_times(const ModelConfig& model, const Schedule& schedule,
                                             const SizeGrid& grid, int trials,
                                             std::uint64_t master_seed, Hypothesis hypothesis,
                                             int jobs) {
  const double alpha[1] = {schedule.alpha};
  auto records = run_trials(trials, jobs, 1, grid, hypothesis, master_seed,
                            [&](std::uint64_t seed) {
                              return tsp_trial_decisions(model, schedule, alpha, grid, seed);
                            });
  return std::move(records[0]);
}

std::vector<DetectionRecord> baseline_detection_times(const ModelConfig& model,
                                                      const GridSpec& spec, BaselineKind kind,
                                                      const SizeGrid& grid, int trials,
                                                      std::uint64_t master_seed,
                                                      Hypothesis hypothesis, int jobs) {
  const double c_values[1] = {spec.C};
  auto records = run_trials(trials, jobs, 1, grid, hypothesis, master_seed,
                            [&](std::uint64_t seed) {
                              return baseline_trial_decisions(model, spec.p_exp, kind,
                                                              spec.binning, c_values, grid, seed);
                            });
  return std::move(records[0]);
}

ComplexityResult sampling_complexity(std::span<const DetectionRecord> records,
                                     const SizeGrid& grid, double eps) {
  if (records.empty()) throw std::invalid_argument("sampling_complexity: no records");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("sampling_complexity: eps in (0,1)");
  const double total = static_cast<double>(records.size());
  std::size_t censored = 0;
  for (const auto& r : records) censored += r.censored ? 1 : 0;
  if (static_cast<double>(censored) / total >= eps)
    return ComplexityResult{grid.n_max(), true};
  for (Index m : grid.sizes) {
    std::size_t covered = 0;
    for (const auto& r : records) {
      if (!r.censored && r.t_tilde <= m) ++covered;
    }
    if (static_cast<double>(covered) / total >= 1.0 - eps) return ComplexityResult{m, false};
  }
  return ComplexityResult{grid.n_max(), true};  // unreachable given the censoring check
}

TradeoffCurve tradeoff_sweep(const ModelConfig& model_h1, const Schedule& schedule_base,
                             std::span<const double> alphas, double eps, int trials,
                             std::uint64_t master_seed, const SizeGrid& grid, int jobs) {
  if (alphas.empty()) throw std::invalid_argument("tradeoff_sweep: empty alpha list");
  const ModelConfig model_h0 = null_version(model_h1);

  auto h0_records = run_trials(trials, jobs, alphas.size(), grid, Hypothesis::H0, master_seed,
                               [&](std::uint64_t seed) {
                                 return tsp_trial_decisions(model_h0, schedule_base, alphas, grid,
                                                            seed);
                               });
  auto h1_records = run_trials(trials, jobs, alphas.size(), grid, Hypothesis::H1, master_seed,
                               [&](std::uint64_t seed) {
                                 return tsp_trial_decisions(model_h1, schedule_base, alphas, grid,
                                                            seed);
                               });

  TradeoffCurve curve;
  curve.eps = eps;
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    curve.points.push_back(TradeoffPoint{alphas[a],
                                         sampling_complexity(h0_records[a], grid, eps),
                                         sampling_complexity(h1_records[a], grid, eps)});
  }
  std::sort(curve.points.begin(), curve.points.end(),
            [](const TradeoffPoint& x, const TradeoffPoint& y) { return x.param < y.param; });
  return curve;
}

TradeoffCurve baseline_tradeoff_sweep(const ModelConfig& model_h1, double p_exp,
                                      BaselineKind kind, std::span<const double> c_values,
                                      double eps, int trials, std::uint64_t master_seed,
                                      const SizeGrid& grid, int jobs, BinningMode binning) {
  if (c_values.empty()) throw std::invalid_argument("baseline_tradeoff_sweep: empty C list");
  const ModelConfig model_h0 = null_version(model_h1);

  auto h0_records = run_trials(trials, jobs, c_values.size(), grid, Hypothesis::H0, master_seed,
                               [&](std::uint64_t seed) {
                                 return baseline_trial_decisions(model_h0, p_exp, kind, binning,
                                                                 c_values, grid, seed);
                               });
  auto h1_records = run_trials(trials, jobs, c_values.size(), grid, Hypothesis::H1, master_seed,
                               [&](std::uint64_t seed) {
                                 return baseline_trial_decisions(model_h1, p_exp, kind, binning,
                                                                 c_values, grid, seed);
                               });

  TradeoffCurve curve;
  curve.eps = eps;
  for (std::size_t c = 0; c < c_values.size(); ++c) {
    curve.points.push_back(TradeoffPoint{c_values[c],
                                         sampling_complexity(h0_records[c], grid, eps),
                                         sampling_complexity(h1_records[c], grid, eps)});
  }
  std::sort(curve.points.begin(), curve.points.end(),
            [](const TradeoffPoint& x, const TradeoffPoint& y) { return x.param < y.param; });
  return curve;
}

double heuristic_w(int d, double C, double p_exp) {
  if (d < 2) throw std::invalid_argument("heuristic_w: need d >= 2");
  if (!(C > 0.0 && C < 1.0)) throw std::invalid_argument("heuristic_w: need C in (0,1)");
  if (!(p_exp > 0.0)) throw std::invalid_argument("heuristic_w: need p_exp > 0");
  return std::pow(C, p_exp * static_cast<double>(d));
}

SignificanceResult significance_estimate(const ModelConfig& model_h0, const Schedule& schedule,
                                         Index n, int trials, std::uint64_t master_seed,
                                         int jobs) {
  if (trials < 1) throw std::invalid_argument("significance_estimate: need trials >= 1");
  std::vector<std::uint8_t> rejected(static_cast<std::size_t>(trials), 0);
  parallel_for(trials, jobs, [&](int t) {
    const std::uint64_t seed = derive_seed(master_seed, static_cast<std::uint64_t>(t));
    const Dataset data = sample(model_h0, n, seed);
    rejected[static_cast<std::size_t>(t)] =
        static_cast<std::uint8_t>(decide_independence(data, schedule).decision);
  });
  double hits = 0.0;
  for (auto r : rejected) hits += r;
  SignificanceResult out;
  out.trials = trials;
  out.rejection_fraction = hits / static_cast<double>(trials);
  out.half_width = 1.96 * std::sqrt(out.rejection_fraction * (1.0 - out.rejection_fraction) /
                                    static_cast<double>(trials));
  return out;
}

}  // namespace tsp
