#include "pursuit/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace pursuit::game {

namespace {

void require_nonempty(const PayoffMatrix& a) {
  if (a.rows == 0 || a.cols == 0 || a.entries.size() != a.rows * a.cols) {
    throw Error::argument("payoff matrix is empty or inconsistently sized");
  }
}

// Gaussian elimination with partial pivoting in extended precision; the
// equalizing systems are tiny but fixture entries span six orders of
// magnitude, so double residuals would not stay below the verification
// tolerance.
bool solve_dense(std::vector<long double>& m, std::vector<long double>& rhs, std::size_t n) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m[r * n + col]) > std::abs(m[pivot * n + col])) pivot = r;
    }
    if (m[pivot * n + col] == 0.0L) return false;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m[pivot * n + c], m[col * n + c]);
      std::swap(rhs[pivot], rhs[col]);
    }
    const long double diag = m[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const long double f = m[r * n + col] / diag;
      if (f == 0.0L) continue;
      for (std::size_t c = col; c < n; ++c) m[r * n + c] -= f * m[col * n + c];
      rhs[r] -= f * rhs[col];
    }
  }
  for (std::size_t r = n; r-- > 0;) {
    long double acc = rhs[r];
    for (std::size_t c = r + 1; c < n; ++c) acc -= m[r * n + c] * rhs[c];
    rhs[r] = acc / m[r * n + r];
  }
  return true;
}

// Enumerates k-subsets of {0..n-1} in lexicographic order.
bool next_subset(std::vector<std::size_t>& subset, std::size_t n) {
  const std::size_t k = subset.size();
  std::size_t i = k;
  while (i-- > 0) {
    if (subset[i] < n - k + i) {
      ++subset[i];
      for (std::size_t j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
      return true;
    }
  }
  return false;
}

struct SupportCandidate {
  double value = 0.0;
  MixedStrategy x;
  MixedStrategy y;
};

// Solves the equalization system for supports (rows, cols) of equal size r:
// the row mix makes every supported column payoff equal, and symmetrically.
std::optional<SupportCandidate> try_support(const PayoffMatrix& a,
                                            const std::vector<std::size_t>& rows,
                                            const std::vector<std::size_t>& cols,
                                            double tol_abs) {
  const std::size_t r = rows.size();
  const std::size_t dim = r + 1;

  // Row strategy: for each supported column j, sum_i A[i][j] x_i - v = 0; sum x = 1.
  std::vector<long double> m(dim * dim, 0.0L), rhs(dim, 0.0L);
  for (std::size_t eq = 0; eq < r; ++eq) {
    for (std::size_t k = 0; k < r; ++k) m[eq * dim + k] = a.at(rows[k], cols[eq]);
    m[eq * dim + r] = -1.0L;
  }
  for (std::size_t k = 0; k < r; ++k) m[r * dim + k] = 1.0L;
  rhs[r] = 1.0L;
  if (!solve_dense(m, rhs, dim)) return std::nullopt;
  std::vector<long double> x(rhs.begin(), rhs.begin() + r);
  const long double vx = rhs[r];

  // Column strategy: for each supported row i, sum_j A[i][j] y_j - v = 0.
  std::vector<long double> m2(dim * dim, 0.0L), rhs2(dim, 0.0L);
  for (std::size_t eq = 0; eq < r; ++eq) {
    for (std::size_t k = 0; k < r; ++k) m2[eq * dim + k] = a.at(rows[eq], cols[k]);
    m2[eq * dim + r] = -1.0L;
  }
  for (std::size_t k = 0; k < r; ++k) m2[r * dim + k] = 1.0L;
  rhs2[r] = 1.0L;
  if (!solve_dense(m2, rhs2, dim)) return std::nullopt;
  std::vector<long double> y(rhs2.begin(), rhs2.begin() + r);
  const long double vy = rhs2[r];

  if (std::abs(static_cast<double>(vx - vy)) > tol_abs) return std::nullopt;
  for (long double xi : x) {
    if (xi < -static_cast<long double>(tol_abs)) return std::nullopt;
  }
  for (long double yj : y) {
    if (yj < -static_cast<long double>(tol_abs)) return std::nullopt;
  }

  SupportCandidate cand;
  cand.value = static_cast<double>((vx + vy) / 2.0L);
  cand.x.assign(a.rows, 0.0);
  cand.y.assign(a.cols, 0.0);
  long double sx = 0.0L, sy = 0.0L;
  for (std::size_t k = 0; k < r; ++k) {
    sx += std::max(x[k], 0.0L);
    sy += std::max(y[k], 0.0L);
  }
  for (std::size_t k = 0; k < r; ++k) {
    cand.x[rows[k]] = static_cast<double>(std::max(x[k], 0.0L) / sx);
    cand.y[cols[k]] = static_cast<double>(std::max(y[k], 0.0L) / sy);
  }
  return cand;
}

bool verify_equilibrium(const PayoffMatrix& a, const SupportCandidate& c, double tol_abs) {
  // Column deviations cannot push the value below v, row deviations above it.
  for (std::size_t j = 0; j < a.cols; ++j) {
    long double payoff = 0.0L;
    for (std::size_t i = 0; i < a.rows; ++i) payoff += (long double)a.at(i, j) * c.x[i];
    if (static_cast<double>(payoff) < c.value - tol_abs) return false;
  }
  for (std::size_t i = 0; i < a.rows; ++i) {
    long double payoff = 0.0L;
    for (std::size_t j = 0; j < a.cols; ++j) payoff += (long double)a.at(i, j) * c.y[j];
    if (static_cast<double>(payoff) > c.value + tol_abs) return false;
  }
  return true;
}

}  // namespace

PayoffMatrix build_payoff_matrix(const kinematics::PursuitScenario& scenario) {
  kinematics::validate_scenario(scenario);
  if (scenario.direction_set.empty()) {
    throw Error::argument("scenario direction_set is empty");
  }
  const std::size_t n_speeds = scenario.speed_set.size();
  if (n_speeds > 8) {
    throw Error::size("speed set of " + std::to_string(n_speeds) +
                      " exceeds the factorial column guard of 8");
  }

  PayoffMatrix a;
  std::vector<std::size_t> perm(n_speeds);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    a.col_labels.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  for (double dir : scenario.direction_set) {
    for (double v : scenario.speed_set) a.row_labels.push_back({dir, v});
  }
  a.rows = a.row_labels.size();
  a.cols = a.col_labels.size();
  a.entries.resize(a.rows * a.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) {
      a.at(i, j) =
          kinematics::guaranteed_capture_time(scenario, a.col_labels[j], a.row_labels[i]).time;
    }
  }
  return a;
}

SaddleScan pure_saddle(const PayoffMatrix& a) {
  require_nonempty(a);
  SaddleScan scan;
  std::vector<double> row_min(a.rows, std::numeric_limits<double>::infinity());
  std::vector<double> col_max(a.cols, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) {
      row_min[i] = std::min(row_min[i], a.at(i, j));
      col_max[j] = std::max(col_max[j], a.at(i, j));
    }
  }
  scan.maximin = *std::max_element(row_min.begin(), row_min.end());
  scan.minimax = *std::min_element(col_max.begin(), col_max.end());
  for (std::size_t i = 0; i < a.rows && !scan.cell; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) {
      const double v = a.at(i, j);
      if (v == row_min[i] && v == col_max[j]) {
        scan.cell = SaddleCell{i, j, v};
        break;
      }
    }
  }
  return scan;
}

GameSolution brown_robinson(const PayoffMatrix& a, std::size_t max_iters, double tol) {
  require_nonempty(a);
  if (max_iters < 1) throw Error::argument("brown_robinson requires max_iters >= 1");
  if (tol < 0.0) throw Error::argument("brown_robinson requires tol >= 0");

  std::vector<double> row_payoff(a.rows, 0.0);  // cumulative payoff vs column counts
  std::vector<double> col_payoff(a.cols, 0.0);  // cumulative payoff vs row counts
  std::vector<double> row_count(a.rows, 0.0);
  std::vector<double> col_count(a.cols, 0.0);

  GameSolution sol;
  sol.method = SolveMethod::kFictitiousPlay;
  sol.lower_bound = -std::numeric_limits<double>::infinity();
  sol.upper_bound = std::numeric_limits<double>::infinity();

  std::size_t i = 0, j = 0;
  std::size_t k = 0;
  while (k < max_iters) {
    ++k;
    row_count[i] += 1.0;
    col_count[j] += 1.0;
    for (std::size_t r = 0; r < a.rows; ++r) row_payoff[r] += a.at(r, j);
    for (std::size_t c = 0; c < a.cols; ++c) col_payoff[c] += a.at(i, c);

    std::size_t best_row = 0, best_col = 0;
    for (std::size_t r = 1; r < a.rows; ++r) {
      if (row_payoff[r] > row_payoff[best_row]) best_row = r;
    }
    for (std::size_t c = 1; c < a.cols; ++c) {
      if (col_payoff[c] < col_payoff[best_col]) best_col = c;
    }
    sol.upper_bound = std::min(sol.upper_bound, row_payoff[best_row] / k);
    sol.lower_bound = std::max(sol.lower_bound, col_payoff[best_col] / k);
    i = best_row;
    j = best_col;
    if (sol.upper_bound - sol.lower_bound <= tol) break;
  }

  sol.iterations = k;
  sol.evader_strategy.resize(a.rows);
  sol.pursuer_strategy.resize(a.cols);
  for (std::size_t r = 0; r < a.rows; ++r) sol.evader_strategy[r] = row_count[r] / k;
  for (std::size_t c = 0; c < a.cols; ++c) sol.pursuer_strategy[c] = col_count[c] / k;
  if (sol.upper_bound - sol.lower_bound <= tol) {
    sol.value = (sol.upper_bound + sol.lower_bound) / 2.0;
  }
  return sol;
}

GameSolution exact_value_support_enumeration(const PayoffMatrix& a) {
  require_nonempty(a);
  const std::size_t r_max = std::min(a.rows, a.cols);
  if (r_max > 10) {
    throw Error::size("support enumeration guarded at min(m, n) <= 10");
  }
  double scale = 0.0;
  for (double v : a.entries) scale = std::max(scale, std::abs(v));
  const double tol_abs = 1e-10 * std::max(1.0, scale);

  for (std::size_t r = 1; r <= r_max; ++r) {
    std::vector<std::size_t> rows(r);
    std::iota(rows.begin(), rows.end(), 0);
    do {
      std::vector<std::size_t> cols(r);
      std::iota(cols.begin(), cols.end(), 0);
      do {
        auto cand = try_support(a, rows, cols, tol_abs);
        if (!cand || !verify_equilibrium(a, *cand, tol_abs)) continue;
        GameSolution sol;
        sol.method = SolveMethod::kSupportEnumeration;
        sol.value = cand->value;
        sol.lower_bound = cand->value;
        sol.upper_bound = cand->value;
        sol.evader_strategy = std::move(cand->x);
        sol.pursuer_strategy = std::move(cand->y);
        sol.iterations = 0;
        return sol;
      } while (next_subset(cols, a.cols));
    } while (next_subset(rows, a.rows));
  }
  throw Error::internal(
      "support enumeration found no verified equilibrium; numerical failure, since every "
      "matrix game has one in mixed strategies");
}

double expected_payoff(const PayoffMatrix& a, const MixedStrategy& x, const MixedStrategy& y) {
  if (x.size() != a.rows || y.size() != a.cols) {
    throw Error::argument("strategy lengths do not match the matrix");
  }
  long double acc = 0.0L;
  for (std::size_t i = 0; i < a.rows; ++i) {
    if (x[i] == 0.0) continue;
    long double row = 0.0L;
    for (std::size_t j = 0; j < a.cols; ++j) row += (long double)a.at(i, j) * y[j];
    acc += x[i] * row;
  }
  return static_cast<double>(acc);
}

PayoffMatrix from_entries(std::size_t rows, std::size_t cols, std::vector<double> entries) {
  if (entries.size() != rows * cols) {
    throw Error::argument("entry count does not match matrix shape");
  }
  PayoffMatrix a;
  a.rows = rows;
  a.cols = cols;
  a.entries = std::move(entries);
  return a;
}

}  // namespace pursuit::game
