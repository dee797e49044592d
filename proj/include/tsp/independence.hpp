#pragma once

#include <functional>

#include "tsp/dataset.hpp"
#include "tsp/pruning.hpp"

namespace tsp {

// Parameter schedules governing growing, penalty and decision. The defaults
// are the experimental sequences: b_n = w * n^-l, delta_n = exp(-n^(1/3)),
// a_n = 0.5 / n. Thresholds operate in nats; reported MI uses report_base.
struct Schedule {
  double w = 0.1;
  double l = 0.001;  // must lie in (0, 1/3)
  double alpha = 1.0;
  double report_base = 2.0;
  std::function<double(Index)> delta_rule;  // default exp(-n^(1/3))
  std::function<double(Index)> a_rule;      // default 0.5/n

  double delta_at(Index n) const;
  double a_at(Index n) const;
  void validate() const;
};

struct ScheduleValues {
  double b;
  double delta;
  double a;
  bool clamped = false;  // b_n fell outside (0,1) and was clamped
};

ScheduleValues schedule_at(const Schedule& s, Index n);

struct MiEstimate {
  double mi_reported = 0.0;     // in report_base units
  double statistic_nats = 0.0;  // divergence of the selected leaf set
  Index leaf_count = 1;
  ScheduleValues sched{};
  LeafSet leaf_set;
};

// grow -> embedded family -> regularized selection -> divergence.
MiEstimate estimate_mi(const Dataset& data, const Schedule& s);

struct TestDecision {
  int decision = 0;             // 1 iff statistic_nats >= threshold
  double statistic_nats = 0.0;
  double threshold = 0.0;       // a_n, in nats
  Index leaf_count = 1;
  double b = 0.0;
  double delta = 0.0;
  double mi_reported = 0.0;
};

TestDecision decide_independence(const Dataset& data, const Schedule& s);

}  // namespace tsp
