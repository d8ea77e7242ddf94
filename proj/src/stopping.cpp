#include "pursuit/stopping.hpp"

#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace pursuit::stopping {

double g(std::size_t n, std::size_t t) {
  if (n == 0 || t < 1 || t > n) {
    throw Error::argument("g requires 1 <= t <= n");
  }
  return static_cast<double>(t) / static_cast<double>(n);
}

double h(std::size_t n, std::size_t t) {
  if (n == 0 || t > n - 1) {
    throw Error::argument("h requires 0 <= t <= n-1");
  }
  if (t == 0) return 1.0 / static_cast<double>(n);
  double tail = 0.0;
  for (std::size_t j = n - 1; j >= t; --j) tail += 1.0 / static_cast<double>(j);
  return static_cast<double>(t) / static_cast<double>(n) * tail;
}

ThresholdChoice optimal_threshold(std::size_t n) {
  if (n == 0) throw Error::argument("optimal_threshold requires n >= 1");
  ThresholdChoice choice;
  choice.policy = {n, 0};
  choice.probability = h(n, 0);
  for (std::size_t t = 1; t + 1 <= n; ++t) {
    const double p = h(n, t);
    if (p > choice.probability) {
      choice.probability = p;
      choice.policy.threshold = t;
    }
  }
  choice.crossing = 0;
  for (std::size_t t = 1; t + 1 <= n; ++t) {
    double tail = 0.0;
    for (std::size_t j = t; j <= n - 1; ++j) tail += 1.0 / static_cast<double>(j);
    if (tail <= 1.0) {
      choice.crossing = t;
      break;
    }
  }
  return choice;
}

double simulate(std::size_t n, std::size_t t, std::size_t trials, std::uint64_t seed) {
  if (n == 0 || t > n - 1) throw Error::argument("simulate requires 0 <= t <= n-1");
  if (trials == 0) throw Error::argument("simulate requires trials >= 1");
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> ranks(n);  // ranks[i] = quality of option i, n-1 is best
  std::iota(ranks.begin(), ranks.end(), 0);
  std::size_t wins = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    for (std::size_t i = n; i-- > 1;) {
      std::uniform_int_distribution<std::size_t> pick(0, i);
      std::swap(ranks[i], ranks[pick(rng)]);
    }
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
  }
  return static_cast<double>(wins) / static_cast<double>(trials);
}

}  // namespace pursuit::stopping
