#include "pursuit/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "test_util.hpp"

using namespace pursuit;
using namespace pursuit::ordering;
using testutil::close_rel;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::vector<double> kSixSpeed{
    0.13, 0.42,  1.13,  3.05,  9.13,   34.1,   //
    0.25, 0.24,  1.74,  4.73,  14.23,  53.27,  //
    0.54, 1.29,  0.44,  7.6,   22.94,  86.04,  //
    1.23, 2.84,  6.0,   0.89,  39.15,  147.2,  //
    3.14, 7.04,  14.7,  31.4,  2.0,    277.2,  //
    9.62, 21.16, 43.89, 3.13,  217.76, 5.6};

CheckCostMatrix six_speed() {
  auto m = matrix_from_entries(6, std::vector<double>(kSixSpeed));
  m.labels = {10.0, 20.0, 30.0, 40.0, 50.0, 60.0};
  return m;
}

CheckCostMatrix random_costs(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> val(0.1, 50.0);
  std::vector<double> entries(n * n);
  for (double& e : entries) e = val(rng);
  return matrix_from_entries(n, std::move(entries));
}

}  // namespace

TEST_SUITE("ordering") {

TEST_CASE("order evaluation") {
  const auto t = matrix_from_entries(2, {1.0, 5.0, 5.0, 2.0});
  CHECK(evaluate_order(t, {0, 1}, Objective::kOpenPath) == 6.0);
  CHECK(evaluate_order(t, {1, 0}, Objective::kOpenPath) == 7.0);
  CHECK(evaluate_order(t, {0, 1}, Objective::kClosedTour) == 11.0);
  CHECK_THROWS_AS(evaluate_order(t, {0}, Objective::kOpenPath), Error);
}

TEST_CASE("brute force basics") {
  const auto one = matrix_from_entries(1, {3.5});
  const auto r1 = brute_force_order(one, Objective::kOpenPath);
  CHECK(r1.order == std::vector<std::size_t>{0});
  CHECK(r1.total_time == 3.5);

  const auto t = matrix_from_entries(2, {1.0, 5.0, 5.0, 2.0});
  const auto r2 = brute_force_order(t, Objective::kOpenPath);
  CHECK(r2.order == std::vector<std::size_t>{0, 1});
  CHECK(r2.total_time == 6.0);

  auto big = matrix_from_entries(10, std::vector<double>(100, 1.0));
  CHECK_THROWS_AS(brute_force_order(big, Objective::kOpenPath), Error);
}

TEST_CASE("six speed fixture optimum") {
  const auto t = six_speed();
  const auto bf_open = brute_force_order(t, Objective::kOpenPath);
  CHECK(close_rel(bf_open.total_time, 22.98, 1e-9));
  CHECK(bf_open.order == std::vector<std::size_t>{5, 3, 1, 2, 0, 4});

  const auto bf_closed = brute_force_order(t, Objective::kClosedTour);
  CHECK(close_rel(bf_closed.total_time, 62.02, 1e-9));
  CHECK(bf_closed.order == std::vector<std::size_t>{0, 5, 3, 2, 1, 4});

  for (auto objective : {Objective::kOpenPath, Objective::kClosedTour}) {
    const auto bf = brute_force_order(t, objective);
    const auto dp = held_karp(t, objective);
    const auto bb = branch_and_bound(t, objective);
    CHECK(dp.total_time == bf.total_time);
    CHECK(bb.total_time == bf.total_time);
    CHECK(dp.order == bf.order);
    CHECK(bb.order == dp.order);
    CHECK(bb.nodes > 0);
    CHECK(bb.nodes < 720);  // brute force visits every leaf
  }
}

TEST_CASE("held karp equals brute force on random instances") {
  std::mt19937_64 rng(1001);
  for (int k = 0; k < 250; ++k) {
    std::uniform_int_distribution<std::size_t> dim(1, 7);
    const auto t = random_costs(rng, dim(rng));
    for (auto objective : {Objective::kOpenPath, Objective::kClosedTour}) {
      const auto bf = brute_force_order(t, objective);
      const auto dp = held_karp(t, objective);
      CHECK(dp.total_time == bf.total_time);
      CHECK(evaluate_order(t, dp.order, objective) == dp.total_time);
    }
  }
}

TEST_CASE("branch and bound equals held karp on random instances") {
  std::mt19937_64 rng(2002);
  for (int k = 0; k < 250; ++k) {
    std::uniform_int_distribution<std::size_t> dim(1, 7);
    const auto t = random_costs(rng, dim(rng));
    for (auto objective : {Objective::kOpenPath, Objective::kClosedTour}) {
      const auto dp = held_karp(t, objective);
      const auto bb = branch_and_bound(t, objective);
      CHECK(bb.total_time == dp.total_time);
      CHECK(evaluate_order(t, bb.order, objective) == bb.total_time);
    }
  }

  // sizes past the brute-force guard still cross-check the two exact solvers
  for (std::size_t n : {10ul, 12ul}) {
    const auto t = random_costs(rng, n);
    for (auto objective : {Objective::kOpenPath, Objective::kClosedTour}) {
      const auto dp = held_karp(t, objective);
      const auto bb = branch_and_bound(t, objective);
      CHECK(bb.total_time == dp.total_time);
    }
  }
}

TEST_CASE("tie-heavy integer matrices agree across solvers") {
  std::mt19937_64 rng(606);
  std::uniform_int_distribution<int> small(1, 4);
  for (int k = 0; k < 150; ++k) {
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    const std::size_t n = dim(rng);
    std::vector<double> entries(n * n);
    for (double& e : entries) e = small(rng);
    const auto t = matrix_from_entries(n, std::move(entries));
    for (auto objective : {Objective::kOpenPath, Objective::kClosedTour}) {
      const auto bf = brute_force_order(t, objective);
      const auto dp = held_karp(t, objective);
      const auto bb = branch_and_bound(t, objective);
      CHECK(dp.total_time == bf.total_time);
      CHECK(bb.total_time == bf.total_time);
      // integer sums are exact, so the greedy reconstruction lands on the
      // same lexicographically smallest optimal order as brute force
      if (objective == Objective::kOpenPath) CHECK(dp.order == bf.order);
    }
  }
}

TEST_CASE("matrix reduction") {
  auto [reduced, h] = reduce_matrix({kInf, 2.0, 3.0, kInf}, 2);
  CHECK(h == 5.0);
  CHECK(reduced[1] == 0.0);
  CHECK(reduced[2] == 0.0);

  // already reduced: idempotent with zero constant
  auto [again, h2] = reduce_matrix(std::vector<double>(reduced), 2);
  CHECK(h2 == 0.0);
  CHECK(again == reduced);

  // the reduction constant lower-bounds the optimal total
  auto fixture = six_speed();
  for (std::size_t i = 0; i < 6; ++i) fixture.entries[i * 6 + i] = kInf;
  auto [_, h3] = reduce_matrix(fixture.entries, 6);
  CHECK(h3 > 0.0);
  CHECK(h3 <= brute_force_order(six_speed(), Objective::kClosedTour).total_time);

  CHECK_THROWS_AS(reduce_matrix({kInf, kInf, 1.0, 2.0}, 2), Error);
  CHECK_THROWS_AS(reduce_matrix({1.0, 2.0}, 2), Error);
}

TEST_CASE("reduction keeps the argmin permutation set") {
  // Every cycle cost drops by exactly h, so each matrix's minimizer stays
  // optimal for the other (rotations of a cycle tie exactly, so the first
  // minimizer found may differ; the minimizer sets agree).
  std::mt19937_64 rng(3003);
  for (int k = 0; k < 100; ++k) {
    const auto t = random_costs(rng, 4);
    auto [reduced, h] = reduce_matrix(std::vector<double>(t.entries), 4);
    const auto reduced_matrix = matrix_from_entries(4, std::move(reduced));
    const auto cycle_cost = [](const CheckCostMatrix& m, const std::vector<std::size_t>& p) {
      double c = 0.0;
      for (std::size_t i = 0; i + 1 < p.size(); ++i) c += m.at(p[i], p[i + 1]);
      return c + m.at(p.back(), p.front());
    };
    std::vector<std::size_t> perm{0, 1, 2, 3};
    std::vector<std::size_t> best_raw, best_red;
    double raw = kInf, red = kInf;
    do {
      const double c_raw = cycle_cost(t, perm);
      const double c_red = cycle_cost(reduced_matrix, perm);
      CHECK(close_rel(c_raw - c_red, h, 1e-9));
      if (c_raw < raw) {
        raw = c_raw;
        best_raw = perm;
      }
      if (c_red < red) {
        red = c_red;
        best_red = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(cycle_cost(t, best_red) <= raw + 1e-9);
    CHECK(cycle_cost(reduced_matrix, best_raw) <= red + 1e-9);
  }
}

TEST_CASE("size guards") {
  auto big = matrix_from_entries(16, std::vector<double>(256, 1.0));
  CHECK_THROWS_AS(branch_and_bound(big, Objective::kOpenPath), Error);
  auto huge = matrix_from_entries(21, std::vector<double>(441, 1.0));
  CHECK_THROWS_AS(held_karp(huge, Objective::kOpenPath), Error);
}

TEST_CASE("order from scenario") {
  const kinematics::PursuitScenario single{200.0, 100.0, {8.0}, {}};
  const auto r = order_from_scenario(single, Objective::kOpenPath);
  CHECK(r.order == std::vector<std::size_t>{0});
  CHECK(r.total_time == kinematics::check_duration_matrix(single).at(0, 0));

  const kinematics::PursuitScenario three{200.0, 100.0, {8.0, 56.0, 78.0}, {}};
  const auto t = kinematics::check_duration_matrix(three);
  const auto best = order_from_scenario(three, Objective::kOpenPath);
  const auto oracle = brute_force_order(t, Objective::kOpenPath);
  CHECK(best.total_time == oracle.total_time);
  CHECK(best.order == oracle.order);

  // optimal order never loses to the descending-speed heuristic
  std::vector<std::size_t> descending{2, 1, 0};
  CHECK(best.total_time <= evaluate_order(t, descending, Objective::kOpenPath));
}

}  // TEST_SUITE
