#include "pursuit/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace pursuit::ordering {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_square(const CheckCostMatrix& t) {
  if (t.n == 0 || t.entries.size() != t.n * t.n) {
    throw Error::argument("check cost matrix is empty or inconsistently sized");
  }
}

double max_finite(const std::vector<double>& entries) {
  double s = 0.0;
  for (double v : entries) {
    if (std::isfinite(v)) s = std::max(s, std::abs(v));
  }
  return s;
}

// Internal reduction; returns false when some row or column is entirely
// blocked (the node is infeasible).
bool reduce_in_place(std::vector<double>& m, std::size_t n, const std::vector<bool>& row_on,
                     const std::vector<bool>& col_on, double& h) {
  h = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!row_on[i]) continue;
    double lo = kInf;
    for (std::size_t j = 0; j < n; ++j) {
      if (col_on[j]) lo = std::min(lo, m[i * n + j]);
    }
    if (!std::isfinite(lo)) return false;
    if (lo > 0.0) {
      for (std::size_t j = 0; j < n; ++j) {
        if (col_on[j] && std::isfinite(m[i * n + j])) m[i * n + j] -= lo;
      }
      h += lo;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!col_on[j]) continue;
    double lo = kInf;
    for (std::size_t i = 0; i < n; ++i) {
      if (row_on[i]) lo = std::min(lo, m[i * n + j]);
    }
    if (!std::isfinite(lo)) return false;
    if (lo > 0.0) {
      for (std::size_t i = 0; i < n; ++i) {
        if (row_on[i] && std::isfinite(m[i * n + j])) m[i * n + j] -= lo;
      }
      h += lo;
    }
  }
  return true;
}

// Little-style search over an arc matrix whose Hamiltonian cycles encode the
// check orders (open paths travel through a virtual depot node).
class LittleSearch {
 public:
  LittleSearch(const CheckCostMatrix& t, Objective objective)
      : t_(t), objective_(objective), real_n_(t.n) {
    if (objective_ == Objective::kOpenPath) {
      n_ = real_n_ + 1;  // node 0 is the depot
      cost_.assign(n_ * n_, kInf);
      for (std::size_t i = 0; i < real_n_; ++i) {
        cost_[0 * n_ + (i + 1)] = t.at(i, i);  // first check pays the diagonal
        cost_[(i + 1) * n_ + 0] = 0.0;         // stopping is free
        for (std::size_t j = 0; j < real_n_; ++j) {
          if (i != j) cost_[(i + 1) * n_ + (j + 1)] = t.at(i, j);
        }
      }
      diag_floor_ = 0.0;
    } else {
      n_ = real_n_;
      cost_.assign(n_ * n_, kInf);
      double lo = kInf;
      for (std::size_t i = 0; i < real_n_; ++i) {
        lo = std::min(lo, t.at(i, i));
        for (std::size_t j = 0; j < real_n_; ++j) {
          if (i != j) cost_[i * n_ + j] = t.at(i, j);
        }
      }
      diag_floor_ = lo;  // every closed tour still pays one first-check diagonal
    }
    const double scale = std::max(1.0, max_finite(cost_));
    zero_eps_ = 1e-12 * scale;
    prune_margin_ = 1e-9 * scale;
  }

  CheckOrder run() {
    best_total_ = kInf;
    nodes_ = 0;
    std::vector<bool> row_on(n_, true), col_on(n_, true);
    std::vector<std::size_t> next(n_, n_), prev(n_, n_);
    explore(cost_, row_on, col_on, next, prev, 0.0, n_);
    if (!std::isfinite(best_total_)) {
      throw Error::infeasible("branch and bound found no feasible check order");
    }
    CheckOrder result;
    result.order = best_order_;
    result.total_time = best_total_;
    result.objective = objective_;
    result.nodes = nodes_;
    return result;
  }

 private:
  void explore(std::vector<double> m, std::vector<bool> row_on, std::vector<bool> col_on,
               std::vector<std::size_t> next, std::vector<std::size_t> prev, double bound,
               std::size_t remaining) {
    ++nodes_;
    double h = 0.0;
    if (!reduce_in_place(m, n_, row_on, col_on, h)) return;
    bound += h;
    if (bound + diag_floor_ >= best_total_ + prune_margin_) return;

    if (remaining == 2) {
      finish_pairings(m, row_on, col_on, next);
      return;
    }

    // Branch on the zero whose exclusion lifts the bound the most.
    std::size_t bi = n_, bj = n_;
    double best_theta = -1.0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!row_on[i]) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (!col_on[j] || m[i * n_ + j] > zero_eps_) continue;
        double row_alt = kInf, col_alt = kInf;
        for (std::size_t c = 0; c < n_; ++c) {
          if (col_on[c] && c != j) row_alt = std::min(row_alt, m[i * n_ + c]);
        }
        for (std::size_t r = 0; r < n_; ++r) {
          if (row_on[r] && r != i) col_alt = std::min(col_alt, m[r * n_ + j]);
        }
        const double theta = row_alt + col_alt;  // may be inf
        if (theta > best_theta) {
          best_theta = theta;
          bi = i;
          bj = j;
        }
      }
    }
    if (bi == n_) return;  // no zero at all: reduction failed, node dead

    // Include branch: fix the arc bi -> bj, drop its row and column, and ban
    // the arc that would close the merged path into a premature subtour.
    {
      std::vector<double> m2 = m;
      std::vector<bool> r2 = row_on, c2 = col_on;
      std::vector<std::size_t> nx = next, pv = prev;
      r2[bi] = false;
      c2[bj] = false;
      nx[bi] = bj;
      pv[bj] = bi;
      std::size_t head = bi;
      while (pv[head] != n_) head = pv[head];
      std::size_t tail = bj;
      while (nx[tail] != n_) tail = nx[tail];
      if (remaining > 2) m2[tail * n_ + head] = kInf;
      explore(std::move(m2), std::move(r2), std::move(c2), std::move(nx), std::move(pv), bound,
              remaining - 1);
    }

    // Exclude branch: ban the arc and keep searching at the same size.
    if (bound + diag_floor_ + (std::isfinite(best_theta) ? best_theta : kInf) <
        best_total_ + prune_margin_) {
      m[bi * n_ + bj] = kInf;
      explore(std::move(m), std::move(row_on), std::move(col_on), std::move(next),
              std::move(prev), bound, remaining);
    }
  }

  void finish_pairings(const std::vector<double>& m, const std::vector<bool>& row_on,
                       const std::vector<bool>& col_on, const std::vector<std::size_t>& next) {
    std::size_t rows[2], cols[2], k = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (row_on[i]) rows[k++] = i;
    }
    k = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      if (col_on[j]) cols[k++] = j;
    }
    const std::size_t pairings[2][2] = {{0, 1}, {1, 0}};
    for (const auto& p : pairings) {
      if (!std::isfinite(m[rows[0] * n_ + cols[p[0]]]) ||
          !std::isfinite(m[rows[1] * n_ + cols[p[1]]])) {
        continue;
      }
      std::vector<std::size_t> nx = next;
      nx[rows[0]] = cols[p[0]];
      nx[rows[1]] = cols[p[1]];
      consider_cycle(nx);
    }
  }

  void consider_cycle(const std::vector<std::size_t>& next) {
    // Walk the arc set; accept only a single Hamiltonian cycle.
    std::vector<std::size_t> tour;
    tour.reserve(n_);
    std::vector<bool> seen(n_, false);
    std::size_t node = 0;
    for (std::size_t step = 0; step < n_; ++step) {
      if (seen[node]) return;
      seen[node] = true;
      tour.push_back(node);
      node = next[node];
      if (node == n_) return;
    }
    if (node != 0) return;

    std::vector<std::size_t> order;
    order.reserve(real_n_);
    if (objective_ == Objective::kOpenPath) {
      for (std::size_t i = 1; i < tour.size(); ++i) order.push_back(tour[i] - 1);
    } else {
      // Rotate the cycle to start at the cheapest first-check diagonal.
      std::size_t start_pos = 0;
      for (std::size_t i = 1; i < tour.size(); ++i) {
        const double di = t_.at(tour[i], tour[i]);
        const double dbest = t_.at(tour[start_pos], tour[start_pos]);
        if (di < dbest || (di == dbest && tour[i] < tour[start_pos])) start_pos = i;
      }
      for (std::size_t i = 0; i < tour.size(); ++i) {
        order.push_back(tour[(start_pos + i) % tour.size()]);
      }
    }
    const double total = evaluate_order(t_, order, objective_);
    if (total < best_total_) {
      best_total_ = total;
      best_order_ = order;
    }
  }

  const CheckCostMatrix& t_;
  Objective objective_;
  std::size_t real_n_;
  std::size_t n_ = 0;
  std::vector<double> cost_;
  double diag_floor_ = 0.0;
  double zero_eps_ = 0.0;
  double prune_margin_ = 0.0;
  double best_total_ = kInf;
  std::vector<std::size_t> best_order_;
  std::size_t nodes_ = 0;
};

}  // namespace

double evaluate_order(const CheckCostMatrix& t, const std::vector<std::size_t>& order,
                      Objective objective) {
  require_square(t);
  if (order.size() != t.n) throw Error::argument("order length does not match the matrix");
  double acc = 0.0;
  if (objective == Objective::kClosedTour) acc = t.at(order.back(), order.front());
  for (std::size_t k = order.size(); k-- > 1;) acc = t.at(order[k - 1], order[k]) + acc;
  return t.at(order.front(), order.front()) + acc;
}

CheckOrder brute_force_order(const CheckCostMatrix& t, Objective objective) {
  require_square(t);
  if (t.n > 9) throw Error::size("brute force order guarded at n <= 9");
  std::vector<std::size_t> perm(t.n);
  std::iota(perm.begin(), perm.end(), 0);
  CheckOrder best;
  best.objective = objective;
  best.total_time = kInf;
  do {
    const double total = evaluate_order(t, perm, objective);
    if (total < best.total_time) {
      best.total_time = total;
      best.order = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

CheckOrder held_karp(const CheckCostMatrix& t, Objective objective) {
  require_square(t);
  const std::size_t n = t.n;
  if (n > 20) throw Error::size("held_karp guarded at n <= 20");
  const std::size_t full = (std::size_t{1} << n) - 1;

  CheckOrder best;
  best.objective = objective;
  best.total_time = kInf;

  // g[j][mask]: cheapest completion from j through every speed in mask (j not
  // in mask), right-associated so totals match evaluate_order bit for bit.
  std::vector<double> g(n * (full + 1), kInf);
  auto fill_table = [&](std::size_t return_to, bool closed) {
    for (std::size_t j = 0; j < n; ++j) {
      g[j * (full + 1)] = closed ? t.at(j, return_to) : 0.0;
    }
    for (std::size_t mask = 1; mask <= full; ++mask) {
      if (closed && (mask & (std::size_t{1} << return_to))) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (mask & (std::size_t{1} << j)) continue;
        double lo = kInf;
        for (std::size_t k = 0; k < n; ++k) {
          if (!(mask & (std::size_t{1} << k))) continue;
          const double cand = t.at(j, k) + g[k * (full + 1) + (mask ^ (std::size_t{1} << k))];
          lo = std::min(lo, cand);
        }
        g[j * (full + 1) + mask] = lo;
      }
    }
  };

  auto reconstruct = [&](std::size_t start) {
    std::vector<std::size_t> order{start};
    std::size_t j = start;
    std::size_t mask = full ^ (std::size_t{1} << start);
    while (mask != 0) {
      const double target = g[j * (full + 1) + mask];
      for (std::size_t k = 0; k < n; ++k) {
        if (!(mask & (std::size_t{1} << k))) continue;
        if (t.at(j, k) + g[k * (full + 1) + (mask ^ (std::size_t{1} << k))] == target) {
          order.push_back(k);
          mask ^= std::size_t{1} << k;
          j = k;
          break;
        }
      }
    }
    return order;
  };

  if (objective == Objective::kOpenPath) {
    fill_table(0, false);
    std::size_t best_start = n;
    for (std::size_t s = 0; s < n; ++s) {
      const double total = t.at(s, s) + g[s * (full + 1) + (full ^ (std::size_t{1} << s))];
      if (total < best.total_time) {
        best.total_time = total;
        best_start = s;
      }
    }
    best.order = reconstruct(best_start);
  } else {
    std::size_t best_start = n;
    for (std::size_t s = 0; s < n; ++s) {
      fill_table(s, true);
      const double total = t.at(s, s) + g[s * (full + 1) + (full ^ (std::size_t{1} << s))];
      if (total < best.total_time) {
        best.total_time = total;
        best_start = s;
      }
    }
    fill_table(best_start, true);
    best.order = reconstruct(best_start);
  }
  return best;
}

std::pair<std::vector<double>, double> reduce_matrix(std::vector<double> entries,
                                                     std::size_t n) {
  if (n == 0 || entries.size() != n * n) {
    throw Error::argument("reduce_matrix needs a nonempty square matrix");
  }
  std::vector<bool> all_on(n, true);
  double h = 0.0;
  if (!reduce_in_place(entries, n, all_on, all_on, h)) {
    throw Error::infeasible("a row or column is entirely blocked");
  }
  return {std::move(entries), h};
}

CheckOrder branch_and_bound(const CheckCostMatrix& t, Objective objective) {
  require_square(t);
  if (t.n > 15) throw Error::size("branch and bound guarded at n <= 15");
  if (t.n == 1) {
    CheckOrder trivial;
    trivial.order = {0};
    trivial.total_time = evaluate_order(t, trivial.order, objective);
    trivial.objective = objective;
    trivial.nodes = 1;
    return trivial;
  }
  return LittleSearch(t, objective).run();
}

CheckOrder order_from_scenario(const kinematics::PursuitScenario& scenario,
                               Objective objective) {
  return held_karp(kinematics::check_duration_matrix(scenario), objective);
}

CheckCostMatrix matrix_from_entries(std::size_t n, std::vector<double> entries) {
  if (entries.size() != n * n) throw Error::argument("entry count does not match matrix shape");
  CheckCostMatrix m;
  m.n = n;
  m.entries = std::move(entries);
  return m;
}

}  // namespace pursuit::ordering
