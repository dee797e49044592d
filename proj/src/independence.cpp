#include "tsp/independence.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace tsp {

double Schedule::delta_at(Index n) const {
  if (delta_rule) return delta_rule(n);
  return std::exp(-std::cbrt(static_cast<double>(n)));
}

double Schedule::a_at(Index n) const {
  if (a_rule) return a_rule(n);
  return 0.5 / static_cast<double>(n);
}

void Schedule::validate() const {
  if (!(w > 0.0)) throw std::invalid_argument("Schedule: need w > 0");
  if (!(l > 0.0 && l < 1.0 / 3.0)) throw std::invalid_argument("Schedule: need l in (0, 1/3)");
  if (alpha < 0.0) throw std::invalid_argument("Schedule: need alpha >= 0");
  if (!(report_base > 1.0)) throw std::invalid_argument("Schedule: need report_base > 1");
}

ScheduleValues schedule_at(const Schedule& s, Index n) {
  s.validate();
  if (n < 1) throw std::invalid_argument("schedule_at: need n >= 1");
  ScheduleValues v{};
  v.b = s.w * std::pow(static_cast<double>(n), -s.l);
  if (v.b >= 1.0) {
    v.b = 1.0 - 1e-9;
    v.clamped = true;
    static std::atomic<bool> warned{false};
    if (!warned.exchange(true))
      std::cerr << "warning: b_n = w*n^-l fell outside (0,1); clamped to 1 - 1e-9\n";
  }
  v.delta = s.delta_at(n);
  v.a = s.a_at(n);
  if (!(v.delta > 0.0 && v.delta < 1.0))
    throw std::invalid_argument("schedule_at: delta_n outside (0,1)");
  if (!(v.a > 0.0)) throw std::invalid_argument("schedule_at: a_n must be positive");
  return v;
}

MiEstimate estimate_mi(const Dataset& data, const Schedule& s) {
  if (data.n() < 2) throw std::invalid_argument("estimate_mi: need n >= 2");
  const ScheduleValues sched = schedule_at(s, data.n());
  const TspTree tree = grow_full_tree(data, sched.b);
  const EmbeddedFamily family = embedded_family(data, tree);
  const Selection sel =
      select_regularized(family, data.n(), sched.b, data.d(), sched.delta, s.alpha);

  MiEstimate out;
  out.statistic_nats = sel.leaf_set.divergence;
  out.mi_reported = sel.leaf_set.divergence / std::log(s.report_base);
  out.leaf_count = static_cast<Index>(sel.leaf_set.size());
  out.sched = sched;
  out.leaf_set = sel.leaf_set;
  return out;
}

TestDecision decide_independence(const Dataset& data, const Schedule& s) {
  const MiEstimate est = estimate_mi(data, s);
  TestDecision out;
  out.statistic_nats = est.statistic_nats;
  out.threshold = est.sched.a;
  out.decision = est.statistic_nats >= est.sched.a ? 1 : 0;
  out.leaf_count = est.leaf_count;
  out.b = est.sched.b;
  out.delta = est.sched.delta;
  out.mi_reported = est.mi_reported;
  return out;
}

}  // namespace tsp
