#pragma once

#include <cstddef>
#include <cstdint>

#include "pursuit/error.hpp"

namespace pursuit::stopping {

// Threshold policy for picking the best of n sequentially revealed options:
// skip the first `threshold`, then accept the first one better than
// everything seen so far.
struct StoppingPolicy {
  std::size_t n = 0;
  std::size_t threshold = 0;
};

struct ThresholdChoice {
  StoppingPolicy policy;       // threshold = argmax_t h(n, t), smaller t on ties
  double probability = 0.0;    // h(n, threshold)
  std::size_t crossing = 0;    // smallest t >= 1 with sum_{j=t}^{n-1} 1/j <= 1, 0 if none
};

/// Probability that the best of the first t observations is the best overall: t/n.
double g(std::size_t n, std::size_t t);

/// Success probability of the skip-t rule: h(n, 0) = 1/n, otherwise
/// (t/n) * (1/t + 1/(t+1) + ... + 1/(n-1)).
double h(std::size_t n, std::size_t t);

/// Best threshold for n options; for large n the threshold approaches n/e and
/// the success probability approaches 1/e.
ThresholdChoice optimal_threshold(std::size_t n);

/// Monte Carlo win frequency of the skip-t rule over uniformly random rank
/// orders; deterministic for a fixed seed.
double simulate(std::size_t n, std::size_t t, std::size_t trials, std::uint64_t seed);

}  // namespace pursuit::stopping
