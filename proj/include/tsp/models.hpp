#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "tsp/dataset.hpp"
#include "tsp/tree.hpp"

namespace tsp {

enum class ModelKind { gaussian, gaussian_multi, student_t, rotated_mixture };

// Synthetic scenarios: correlated Gaussians (scalar and per-pair
// multivariate), an elliptical multivariate t, and the rotated four-Gaussian
// mixture. theta = 0 / sigma = 0 are the independent configurations.
struct ModelConfig {
  ModelKind kind = ModelKind::gaussian;
  double sigma = 0.0;  // per-pair correlation, |sigma| < 1
  int pairs = 1;       // (X_i, Y_i) pairs; d = 2 * pairs for gaussian kinds
  int dof = 2;         // student_t degrees of freedom
  double theta = 0.0;  // mixture rotation, in [0, pi/4]

  void validate() const;
  int x_dims() const;
  int y_dims() const;
  int dims() const { return x_dims() + y_dims(); }
};

const char* model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(const std::string& name);

// Replaces the dependence parameter with its null value (sigma or theta -> 0).
ModelConfig null_version(const ModelConfig& m);

// n i.i.d. draws, deterministic in (config, seed). Drawing n1 < n2 samples
// from the same seed yields a prefix (one growing stream per seed).
Dataset sample(const ModelConfig& model, Index n, std::uint64_t seed);

// pairs * (-0.5 * log2(1 - sigma^2)), in bits.
double gaussian_mi(double sigma, int pairs);

// Inverse of gaussian_mi: the per-pair correlation that attains a target MI.
double sigma_for_target_mi(double target_bits, int pairs);

// Analytic MI in nats for the gaussian kinds.
double analytic_mi_nats(const ModelConfig& m);

// Oracle per-sample log-likelihood statistic (1/n) sum ln(dP/dQ*) in nats,
// from the closed-form bivariate normal density ratio per pair. Gaussian
// kinds only.
double oracle_statistic(const Dataset& data, const ModelConfig& model);

// Regret decomposition against a fixed partition, gaussian (d = 2) only:
//   term_i   = i_n - I(X,Y)
//   term_ii  = I(X,Y) - D_pi(P||Q*)          (approximation error)
//   term_iii = D_pi(P||Q*) - D_pi(Phat||Qhat*) (estimation error)
// The true restricted divergence is computed by quadrature with tails
// clipped at +-10 standard deviations.
struct RegretReport {
  double term_i = 0.0;
  double term_ii = 0.0;
  double term_iii = 0.0;
  double oracle_nats = 0.0;          // i_n
  double statistic_nats = 0.0;       // empirical restricted divergence
  double analytic_nats = 0.0;        // I(X,Y)
  double true_restricted_nats = 0.0; // D_pi(P||Q*)
};

RegretReport regret_report(const Dataset& data, std::span<const AxisCell> cells,
                           const ModelConfig& model);

}  // namespace tsp
