#include "pursuit/scheduling.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace pursuit::scheduling {

namespace {

void require_jobs(const std::vector<Job>& jobs) {
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    if (!(jobs[k].duration > 0.0) || !(jobs[k].weight > 0.0)) {
      throw Error::domain("job " + std::to_string(k) +
                          " must have positive duration and weight");
    }
  }
}

void require_permutation(const std::vector<std::size_t>& order, std::size_t n) {
  if (order.size() != n) throw Error::argument("order length does not match the job count");
  std::vector<bool> seen(n, false);
  for (std::size_t idx : order) {
    if (idx >= n || seen[idx]) throw Error::argument("order is not a permutation of job indices");
    seen[idx] = true;
  }
}

}  // namespace

Schedule evaluate_criteria(const std::vector<Job>& jobs, const std::vector<std::size_t>& order) {
  require_jobs(jobs);
  require_permutation(order, jobs.size());
  Schedule s;
  s.order = order;
  s.completions.resize(order.size());
  double t = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Job& job = jobs[order[k]];
    t += job.duration;
    s.completions[k] = t;
    const double lateness = t - job.due;
    const double tardiness = std::max(lateness, 0.0);
    s.f1 += job.weight * tardiness;
    s.f2 = std::max(s.f2, job.weight * tardiness);
    s.f3 += job.weight * lateness;
    s.f4 += job.weight * t;
  }
  return s;
}

Schedule wspt_order(const std::vector<Job>& jobs) {
  require_jobs(jobs);
  std::vector<std::size_t> order(jobs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    // duration/weight ratios compared cross-multiplied to dodge division noise
    return jobs[a].duration * jobs[b].weight < jobs[b].duration * jobs[a].weight;
  });
  return evaluate_criteria(jobs, order);
}

Schedule optimal_order(const std::vector<Job>& jobs, Criterion criterion) {
  if (criterion == Criterion::kF4) return wspt_order(jobs);
  require_jobs(jobs);
  if (jobs.size() > 10) {
    throw Error::size("exhaustive search for f1/f2/f3 guarded at 10 jobs");
  }
  std::vector<std::size_t> perm(jobs.size());
  std::iota(perm.begin(), perm.end(), 0);
  Schedule best;
  double best_value = std::numeric_limits<double>::infinity();
  do {
    Schedule s = evaluate_criteria(jobs, perm);
    const double value = criterion_value(s, criterion);
    if (value < best_value) {
      best_value = value;
      best = std::move(s);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double criterion_value(const Schedule& schedule, Criterion criterion) {
  switch (criterion) {
    case Criterion::kF1:
      return schedule.f1;
    case Criterion::kF2:
      return schedule.f2;
    case Criterion::kF3:
      return schedule.f3;
    case Criterion::kF4:
      return schedule.f4;
  }
  throw Error::argument("unknown criterion");
}

}  // namespace pursuit::scheduling
