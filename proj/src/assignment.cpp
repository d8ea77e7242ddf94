#include "pursuit/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pursuit/kinematics.hpp"

namespace pursuit::assignment {

namespace {

double max_abs_entry(const EfficiencyMatrix& m) {
  double s = 0.0;
  for (double v : m.entries) s = std::max(s, std::abs(v));
  return s;
}

// Tightness must be judged cell-locally: fixture entries span many orders of
// magnitude and a single global epsilon would either miss true zeros or
// invent fake ones.
bool tight(double cost, double u, double v) {
  const double eps = 1e-12 * std::max({1.0, std::abs(cost), std::abs(u), std::abs(v)});
  return std::abs(cost - u - v) <= eps;
}

// Kuhn augmenting path over the tight-edge graph.
bool try_augment(std::size_t row, const EfficiencyMatrix& m, const std::vector<double>& u,
                 const std::vector<double>& v, std::vector<std::size_t>& match_col,
                 std::vector<bool>& visited, const std::vector<bool>& col_banned) {
  const std::size_t n = m.rows;
  for (std::size_t j = 0; j < n; ++j) {
    if (visited[j] || (!col_banned.empty() && col_banned[j])) continue;
    if (!tight(m.at(row, j), u[row], v[j])) continue;
    visited[j] = true;
    if (match_col[j] == n ||
        try_augment(match_col[j], m, u, v, match_col, visited, col_banned)) {
      match_col[j] = row;
      return true;
    }
  }
  return false;
}

std::size_t max_matching(const EfficiencyMatrix& m, const std::vector<double>& u,
                         const std::vector<double>& v, std::vector<std::size_t>& match_col) {
  const std::size_t n = m.rows;
  match_col.assign(n, n);
  std::vector<bool> no_ban;
  std::size_t matched = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> visited(n, false);
    if (try_augment(i, m, u, v, match_col, visited, no_ban)) ++matched;
  }
  return matched;
}

// Checks whether rows [from, n) can all be matched to unused columns through
// tight edges; used when canonicalizing ties.
bool completable(const EfficiencyMatrix& m, const std::vector<double>& u,
                 const std::vector<double>& v, std::size_t from,
                 const std::vector<bool>& col_used) {
  const std::size_t n = m.rows;
  std::vector<std::size_t> match_col(n, n);
  for (std::size_t i = from; i < n; ++i) {
    std::vector<bool> visited(n, false);
    if (!try_augment(i, m, u, v, match_col, visited, col_used)) return false;
  }
  return true;
}

}  // namespace

EfficiencyMatrix build_efficiency_matrix(const std::vector<InterceptorSpec>& interceptors,
                                         const std::vector<TargetSpec>& targets) {
  if (interceptors.empty() || targets.empty()) {
    throw Error::argument("need at least one interceptor and one target");
  }
  EfficiencyMatrix m;
  m.rows = targets.size();
  m.cols = interceptors.size();
  m.entries.assign(m.rows * m.cols, 0.0);
  m.infeasible.assign(m.rows * m.cols, 0);

  double largest_feasible = 0.0;
  for (std::size_t i = 0; i < m.rows; ++i) {
    const TargetSpec& t = targets[i];
    if (!(t.initial_distance > 0.0) || !(t.speed > 0.0)) {
      throw Error::domain("target " + std::to_string(i) +
                          " must have positive distance and speed");
    }
    for (std::size_t j = 0; j < m.cols; ++j) {
      const InterceptorSpec& b = interceptors[j];
      if (!(b.max_speed > 0.0)) {
        throw Error::domain("interceptor " + std::to_string(j) + " must have positive speed");
      }
      if (t.speed >= b.max_speed) {
        m.infeasible[i * m.cols + j] = 1;
        continue;
      }
      const double time = kinematics::known_target_interception_time(
          t.initial_distance, b.max_speed, t.speed, t.direction_deg);
      m.entries[i * m.cols + j] = time;
      largest_feasible = std::max(largest_feasible, time);
    }
  }
  const double sentinel = 1e6 * std::max(largest_feasible, 1.0);
  for (std::size_t k = 0; k < m.entries.size(); ++k) {
    if (m.infeasible[k]) m.entries[k] = sentinel;
  }
  return m;
}

EfficiencyMatrix balance(const EfficiencyMatrix& m) {
  if (m.rows == m.cols) return m;
  const std::size_t n = std::max(m.rows, m.cols);
  EfficiencyMatrix b;
  b.rows = n;
  b.cols = n;
  b.dummy_rows = n - m.rows;
  b.dummy_cols = n - m.cols;
  b.entries.assign(n * n, 0.0);
  if (!m.infeasible.empty()) b.infeasible.assign(n * n, 0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      b.entries[i * n + j] = m.at(i, j);
      if (!m.infeasible.empty()) b.infeasible[i * n + j] = m.infeasible[i * m.cols + j];
    }
  }
  return b;
}

Assignment hungarian(const EfficiencyMatrix& m) {
  if (m.rows != m.cols || m.rows == 0) {
    throw Error::argument("hungarian needs a nonempty square matrix; call balance first");
  }
  const std::size_t n = m.rows;
  for (double v : m.entries) {
    if (v < 0.0) throw Error::argument("hungarian requires nonnegative entries");
  }

  // Step 1/2: row then column reduction, folded into the dual variables.
  std::vector<double> u(n, 0.0), v(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) lo = std::min(lo, m.at(i, j));
    u[i] = lo;
  }
  for (std::size_t j = 0; j < n; ++j) {
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) lo = std::min(lo, m.at(i, j) - u[i]);
    v[j] = lo;
  }

  // Step 2a-c: while the zeros admit no perfect assignment, cover them with
  // the minimum number of lines and pivot on the smallest uncovered entry.
  std::vector<std::size_t> match_col;
  while (max_matching(m, u, v, match_col) < n) {
    std::vector<std::size_t> match_row(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      if (match_col[j] != n) match_row[match_col[j]] = j;
    }
    // Alternating reachability from unmatched rows (Koenig cover: lines are
    // the unreached rows plus the reached columns).
    std::vector<bool> row_reached(n, false), col_reached(n, false);
    std::vector<std::size_t> queue;
    for (std::size_t i = 0; i < n; ++i) {
      if (match_row[i] == n) {
        row_reached[i] = true;
        queue.push_back(i);
      }
    }
    while (!queue.empty()) {
      const std::size_t i = queue.back();
      queue.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        if (col_reached[j] || !tight(m.at(i, j), u[i], v[j])) continue;
        col_reached[j] = true;
        const std::size_t next = match_col[j];
        if (next != n && !row_reached[next]) {
          row_reached[next] = true;
          queue.push_back(next);
        }
      }
    }
    double delta = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (!row_reached[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!col_reached[j]) delta = std::min(delta, m.at(i, j) - u[i] - v[j]);
      }
    }
    if (!(delta > 0.0) || !std::isfinite(delta)) {
      throw Error::internal("hungarian pivot produced a nonpositive step");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (row_reached[i]) u[i] += delta;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (col_reached[j]) v[j] -= delta;
    }
  }

  // Canonicalize ties: smallest column per row, in row order, keeping the
  // remaining rows completable through tight edges.
  Assignment result;
  result.pairs.assign(n, n);
  std::vector<bool> col_used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    bool placed = false;
    for (std::size_t j = 0; j < n && !placed; ++j) {
      if (col_used[j] || !tight(m.at(i, j), u[i], v[j])) continue;
      col_used[j] = true;
      if (completable(m, u, v, i + 1, col_used)) {
        result.pairs[i] = j;
        placed = true;
      } else {
        col_used[j] = false;
      }
    }
    if (!placed) throw Error::internal("hungarian failed to extract a perfect assignment");
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (m.is_infeasible(i, result.pairs[i])) {
      throw Error::infeasible("target " + std::to_string(i) +
                              " has no feasible interceptor (sentinel cell assigned)");
    }
  }

  result.total_cost = 0.0;
  for (std::size_t i = 0; i < n; ++i) result.total_cost += m.at(i, result.pairs[i]);
  result.row_duals = std::move(u);
  result.col_duals = std::move(v);
  return result;
}

bool verify_duals(const EfficiencyMatrix& m, const Assignment& assignment) {
  if (assignment.row_duals.size() != m.rows || assignment.col_duals.size() != m.cols) {
    return false;
  }
  const double tol = 1e-9 * std::max(1.0, max_abs_entry(m));
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (assignment.row_duals[i] + assignment.col_duals[j] > m.at(i, j) + tol) return false;
    }
  }
  double dual_value = 0.0;
  for (double ui : assignment.row_duals) dual_value += ui;
  for (double vj : assignment.col_duals) dual_value += vj;
  return std::abs(dual_value - assignment.total_cost) <= tol;
}

EfficiencyMatrix from_entries(std::size_t rows, std::size_t cols, std::vector<double> entries) {
  if (entries.size() != rows * cols) {
    throw Error::argument("entry count does not match matrix shape");
  }
  EfficiencyMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.entries = std::move(entries);
  return m;
}

}  // namespace pursuit::assignment
