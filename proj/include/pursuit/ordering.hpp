#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pursuit/kinematics.hpp"

namespace pursuit::ordering {

using kinematics::CheckCostMatrix;

// open_path: the pursuer checks every speed once and stops; the first check
// costs its diagonal entry. closed_tour additionally pays the return arc from
// the last checked speed back to the designated (first) one.
enum class Objective { kOpenPath, kClosedTour };

struct CheckOrder {
  std::vector<std::size_t> order;
  double total_time = 0.0;
  Objective objective = Objective::kOpenPath;
  std::size_t nodes = 0;  // search nodes, reported by branch_and_bound only
};

/// Canonical cost of a check order: T[o0][o0] + sum of transition arcs (plus
/// the return arc for closed tours). All solvers report totals through this
/// function so equal orders cost bit-identical totals.
double evaluate_order(const CheckCostMatrix& t, const std::vector<std::size_t>& order,
                      Objective objective);

/// Exhaustive minimum over all permutations; ties resolve to the
/// lexicographically smallest order. Guarded at n <= 9.
CheckOrder brute_force_order(const CheckCostMatrix& t, Objective objective);

/// Exact optimum by dynamic programming over (last speed, remaining subset).
/// Guarded at n <= 20; n = 20 needs roughly 170 MB of table.
CheckOrder held_karp(const CheckCostMatrix& t, Objective objective);

/// Row/column reduction: subtracts each row's minimum, then each column's
/// minimum, skipping blocked arcs (infinity). Returns the reduced matrix and
/// the sum of subtracted constants, a lower bound on every completion.
/// Throws Error::infeasible when a row or column is entirely blocked.
std::pair<std::vector<double>, double> reduce_matrix(std::vector<double> entries,
                                                     std::size_t n);

/// Little-style branch and bound: repeated reduction, branching on the zero
/// whose exclusion raises the bound the most, subtour-closing arcs banned,
/// nodes pruned against the incumbent. Guarded at n <= 15. Returns the same
/// optimum as held_karp, plus the number of explored search nodes.
CheckOrder branch_and_bound(const CheckCostMatrix& t, Objective objective);

/// check_duration_matrix followed by held_karp.
CheckOrder order_from_scenario(const kinematics::PursuitScenario& scenario,
                               Objective objective);

/// Wraps raw entries (e.g. an ingested fixture) as a CheckCostMatrix.
CheckCostMatrix matrix_from_entries(std::size_t n, std::vector<double> entries);

}  // namespace pursuit::ordering
