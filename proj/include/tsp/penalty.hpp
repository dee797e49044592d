#pragma once

#include "tsp/dataset.hpp"

namespace tsp {

struct PenaltyParams {
  Index n;       // sample count, >= 1
  double b;      // probability floor, in (0,1)
  int d;         // joint dimension, >= 2
  double delta;  // confidence parameter, in (0,1)
  Index k;       // tree size (leaf count), >= 1
};

// Distribution-free confidence bound
//   (24*sqrt(2) / (b*sqrt(n))) * sqrt( ln(8/delta) + k*((d+1)ln2 + d ln n) )
// in nats. Throws std::invalid_argument on out-of-range parameters.
double epsilon_c(const PenaltyParams& p);

// Union-bound-corrected penalty: epsilon_c with delta replaced by delta*b,
// and exactly 0 for the trivial tree k = 1.
double penalty_r(Index n, double b, int d, double delta, Index k);

}  // namespace tsp
