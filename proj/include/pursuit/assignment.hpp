#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pursuit/error.hpp"

namespace pursuit::assignment {

struct InterceptorSpec {
  double max_speed = 0.0;
};

struct TargetSpec {
  double initial_distance = 0.0;
  double speed = 0.0;
  double direction_deg = 0.0;
};

// Row = target, column = interceptor. Pairs the interceptor cannot catch
// (target at least as fast) carry a large finite sentinel and are flagged in
// `infeasible`; balancing dummies cost zero.
struct EfficiencyMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> entries;      // row-major
  std::vector<std::uint8_t> infeasible;  // same shape; empty means all feasible
  std::size_t dummy_rows = 0;
  std::size_t dummy_cols = 0;

  double at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
  bool is_infeasible(std::size_t i, std::size_t j) const {
    return !infeasible.empty() && infeasible[i * cols + j] != 0;
  }
};

struct Assignment {
  std::vector<std::size_t> pairs;  // pairs[row] = assigned column
  double total_cost = 0.0;
  std::vector<double> row_duals;   // u
  std::vector<double> col_duals;   // v
};

/// Interception-time matrix: entry (target, interceptor) is the known-target
/// interception time; pairs the interceptor cannot catch get a sentinel of
/// 1e6 times the largest feasible entry.
EfficiencyMatrix build_efficiency_matrix(const std::vector<InterceptorSpec>& interceptors,
                                         const std::vector<TargetSpec>& targets);

/// Pads a rectangular matrix to square with zero-cost dummy rows or columns.
EfficiencyMatrix balance(const EfficiencyMatrix& m);

/// Minimum-cost perfect assignment by the Hungarian method: row reduction,
/// column reduction, then repeated minimum line cover and uncovered-minimum
/// pivots. Returns the assignment together with the dual certificate
/// (u_i + v_j <= cost_ij everywhere, equality on assigned cells). Ties among
/// optimal assignments are broken lexicographically by target row. Throws
/// Error::infeasible when a target can only be matched through a sentinel.
Assignment hungarian(const EfficiencyMatrix& m);

/// True iff the assignment's dual certificate is feasible for m and its value
/// equals the assignment cost. The certificate is stated for the minimization
/// orientation (u_i + v_j <= cost_ij); a maximization formulation flips the
/// inequality.
bool verify_duals(const EfficiencyMatrix& m, const Assignment& assignment);

/// Wraps raw entries (e.g. an ingested fixture) as an EfficiencyMatrix.
EfficiencyMatrix from_entries(std::size_t rows, std::size_t cols, std::vector<double> entries);

}  // namespace pursuit::assignment
