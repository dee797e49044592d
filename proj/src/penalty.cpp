#include "tsp/penalty.hpp"

#include <cmath>
#include <stdexcept>

namespace tsp {

namespace {

void check(const PenaltyParams& p) {
  if (p.n < 1) throw std::invalid_argument("penalty: need n >= 1");
  if (!(p.b > 0.0 && p.b < 1.0)) throw std::invalid_argument("penalty: need b in (0,1)");
  if (p.d < 2) throw std::invalid_argument("penalty: need d >= 2");
  if (!(p.delta > 0.0 && p.delta < 1.0))
    throw std::invalid_argument("penalty: need delta in (0,1)");
  if (p.k < 1) throw std::invalid_argument("penalty: need k >= 1");
}

constexpr double kLeadConstant = 33.941125496954285;  // 24 * sqrt(2)

}  // namespace

double epsilon_c(const PenaltyParams& p) {
  check(p);
  const double n = static_cast<double>(p.n);
  const double inside = std::log(8.0 / p.delta) +
                        static_cast<double>(p.k) * ((p.d + 1) * std::log(2.0) + p.d * std::log(n));
  return kLeadConstant / (p.b * std::sqrt(n)) * std::sqrt(inside);
}

double penalty_r(Index n, double b, int d, double delta, Index k) {
  PenaltyParams p{n, b, d, delta, k};
  check(p);
  if (k == 1) return 0.0;  // trivial-tree exemption
  p.delta = delta * b;
  return epsilon_c(p);
}

}  // namespace tsp
