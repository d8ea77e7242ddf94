#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pursuit/kinematics.hpp"

namespace pursuit::game {

// Zero-sum matrix game between the evader (rows, maximizes capture time) and
// the pursuer (columns, minimizes). Rows are (direction, speed) combinations,
// directions-major; columns are the speed-index permutations in lexicographic
// order.
struct PayoffMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> entries;  // row-major
  std::vector<kinematics::EvaderStrategy> row_labels;
  std::vector<std::vector<std::size_t>> col_labels;

  double at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
  double& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
};

using MixedStrategy = std::vector<double>;

enum class SolveMethod { kSaddle, kFictitiousPlay, kSupportEnumeration };

struct GameSolution {
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  std::optional<double> value;
  MixedStrategy evader_strategy;
  MixedStrategy pursuer_strategy;
  std::size_t iterations = 0;
  SolveMethod method = SolveMethod::kFictitiousPlay;
};

struct SaddleCell {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

struct SaddleScan {
  double maximin = 0.0;  // max_i min_j
  double minimax = 0.0;  // min_j max_i
  std::optional<SaddleCell> cell;
};

/// Payoff matrix of the speed-guessing game: entry (row (a,v), col pi) is the
/// guaranteed capture time of strategy (a,v) under check order pi. Guarded at
/// |speed_set| <= 8 (factorial column count).
PayoffMatrix build_payoff_matrix(const kinematics::PursuitScenario& scenario);

/// Scans for a pure saddle point (cell that is a row minimum and a column
/// maximum); ties broken by lowest (row, col). Also reports maximin/minimax.
SaddleScan pure_saddle(const PayoffMatrix& a);

/// Brown-Robinson fictitious play. Round 1 plays (row 0, col 0); round k+1
/// best-responds to the opponent's empirical counts, ties to the lowest
/// index. Maintains the running best value bounds max_k lower_k <= v <=
/// min_k upper_k and stops at max_iters or bound width <= tol. Returned
/// strategies are the empirical frequencies.
GameSolution brown_robinson(const PayoffMatrix& a, std::size_t max_iters, double tol);

/// Exact value by support enumeration: solves the equalizing system for every
/// equal-size support pair (increasing size, lexicographic) and returns the
/// first pair whose strategies are nonnegative and satisfy the equilibrium
/// inequalities against all pure strategies. Guarded at min(m, n) <= 10.
GameSolution exact_value_support_enumeration(const PayoffMatrix& a);

/// Expected payoff x^T A y of a mixed strategy pair.
double expected_payoff(const PayoffMatrix& a, const MixedStrategy& x, const MixedStrategy& y);

/// Wraps a raw matrix (e.g. an ingested fixture) as a PayoffMatrix without labels.
PayoffMatrix from_entries(std::size_t rows, std::size_t cols, std::vector<double> entries);

}  // namespace pursuit::game
