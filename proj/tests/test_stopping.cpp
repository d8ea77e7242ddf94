#include "pursuit/stopping.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"

using namespace pursuit;
using namespace pursuit::stopping;
using testutil::close_rel;

namespace {

// Exhaustive oracle: win frequency of the skip-t rule over every rank order.
double enumerate_h(std::size_t n, std::size_t t) {
  std::vector<std::size_t> ranks(n);
  std::iota(ranks.begin(), ranks.end(), 0);
  std::size_t wins = 0, total = 0;
  do {
    ++total;
    std::size_t best_seen = 0;
    bool have_seen = false;
    for (std::size_t i = 0; i < t; ++i) {
      if (!have_seen || ranks[i] > best_seen) {
        best_seen = ranks[i];
        have_seen = true;
      }
    }
    for (std::size_t i = t; i < n; ++i) {
      if (!have_seen || ranks[i] > best_seen) {
        if (ranks[i] == n - 1) ++wins;
        break;
      }
    }
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  return static_cast<double>(wins) / static_cast<double>(total);
}

}  // namespace

TEST_SUITE("stopping") {

TEST_CASE("g is the fraction of seen options") {
  CHECK(g(7, 7) == 1.0);
  CHECK(g(4, 1) == 0.25);
  CHECK(g(10, 5) == 0.5);
  CHECK_THROWS_AS(g(5, 0), Error);
  CHECK_THROWS_AS(g(5, 6), Error);
}

TEST_CASE("h matches hand values and the exhaustive oracle") {
  CHECK(close_rel(h(4, 1), 11.0 / 24.0, 1e-15));
  CHECK(close_rel(h(3, 1), 0.5, 1e-15));
  CHECK(h(5, 4) == 1.0 / 5.0);
  CHECK(h(6, 0) == 1.0 / 6.0);

  for (std::size_t n = 1; n <= 7; ++n) {
    for (std::size_t t = 0; t < n; ++t) {
      CHECK(close_rel(h(n, t), enumerate_h(n, t), 1e-12));
    }
  }
  CHECK_THROWS_AS(h(5, 5), Error);
}

TEST_CASE("optimal threshold") {
  const auto n3 = optimal_threshold(3);
  CHECK(n3.policy.threshold == 1);
  CHECK(n3.probability == 0.5);

  const auto n1 = optimal_threshold(1);
  CHECK(n1.policy.threshold == 0);
  CHECK(n1.probability == 1.0);

  const auto n100 = optimal_threshold(100);
  CHECK(n100.policy.threshold == 37);
  CHECK(close_rel(n100.probability, 0.37104, 1e-4));
  CHECK(n100.policy.threshold == n100.crossing - 1);

  // asymptotics: threshold fraction and win probability approach 1/e
  const auto big = optimal_threshold(5000);
  CHECK(close_rel(static_cast<double>(big.policy.threshold) / 5000.0, 1.0 / std::exp(1.0), 2e-3));
  CHECK(close_rel(big.probability, 1.0 / std::exp(1.0), 2e-3));
}

TEST_CASE("g crosses h right after the optimal threshold") {
  for (std::size_t n : {3ul, 4ul, 10ul, 25ul, 100ul}) {
    const auto c = optimal_threshold(n);
    std::size_t first_accept = 0;
    for (std::size_t t = 1; t < n; ++t) {
      if (g(n, t) >= h(n, t)) {
        first_accept = t;
        break;
      }
    }
    CHECK(first_accept == c.policy.threshold + 1);
  }
}

TEST_CASE("h is unimodal in t") {
  for (std::size_t n : {2ul, 5ul, 40ul, 300ul, 1000ul}) {
    bool falling = false;
    for (std::size_t t = 1; t < n; ++t) {
      const double prev = h(n, t - 1);
      const double cur = h(n, t);
      if (cur < prev) falling = true;
      if (falling) CHECK(cur <= prev + 1e-15);
    }
  }
}

TEST_CASE("simulation agrees with the formula") {
  const double p41 = simulate(4, 1, 100000, 1234);
  CHECK(std::abs(p41 - h(4, 1)) < 0.005);

  const double last_only = simulate(12, 11, 100000, 99);
  const double sigma = std::sqrt((1.0 / 12.0) * (11.0 / 12.0) / 100000.0);
  CHECK(std::abs(last_only - 1.0 / 12.0) < 3.0 * sigma + 1e-6);

  const double p100 = simulate(100, 37, 100000, 2024);
  CHECK(std::abs(p100 - 0.368) < 0.01);

  // deterministic per seed
  CHECK(simulate(25, 9, 2000, 7) == simulate(25, 9, 2000, 7));
  CHECK(simulate(25, 9, 2000, 7) != simulate(25, 9, 2000, 8));

  // 4 sigma envelope around the formula value
  for (std::size_t n : {5ul, 9ul, 30ul}) {
    for (std::size_t t = 0; t < n; t += 2) {
      const double p = h(n, t);
      const double est = simulate(n, t, 40000, 1000 + n * 31 + t);
      CHECK(std::abs(est - p) <= 4.0 * std::sqrt(p * (1.0 - p) / 40000.0) + 1e-9);
    }
  }
}

}  // TEST_SUITE
