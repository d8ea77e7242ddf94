#pragma once

#include <cstddef>
#include <vector>

#include "pursuit/error.hpp"

namespace pursuit::scheduling {

// One fugitive to pursue: capture duration, penalty weight and due time.
struct Job {
  double duration = 0.0;
  double weight = 1.0;
  double due = 0.0;
};

enum class Criterion { kF1, kF2, kF3, kF4 };

// Sequential single-pursuer processing with no idle time: completion times
// are the prefix sums of the durations in order.
//   f1 = sum_k w_k * max(C_k - due_k, 0)   total weighted tardiness
//   f2 = max_k w_k * max(C_k - due_k, 0)   maximum weighted tardiness
//   f3 = sum_k w_k * (C_k - due_k)         signed weighted lateness
//   f4 = sum_k w_k * C_k                   weighted completion time
struct Schedule {
  std::vector<std::size_t> order;
  std::vector<double> completions;  // completions[k] = completion of order[k]
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;
  double f4 = 0.0;
};

/// Completion times and all four criteria for the given processing order.
Schedule evaluate_criteria(const std::vector<Job>& jobs, const std::vector<std::size_t>& order);

/// Weighted-shortest-processing-time order: nondecreasing duration/weight
/// ratio, stable on ties. Minimizes f4.
Schedule wspt_order(const std::vector<Job>& jobs);

/// Minimizing schedule for the chosen criterion: f4 delegates to wspt_order;
/// f1/f2/f3 search all orders exhaustively (guarded at 10 jobs).
Schedule optimal_order(const std::vector<Job>& jobs, Criterion criterion);

double criterion_value(const Schedule& schedule, Criterion criterion);

}  // namespace pursuit::scheduling
