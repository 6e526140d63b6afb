#pragma once

#include <array>
#include <string>
#include <string_view>

#include "rbt/game.hpp"

namespace rbt {

// Probability per action; entries for invalid actions are 0.
using ActionDistribution = std::array<double, kNumActions>;

// Game-theoretic value of a reachable board from X's point of view under
// optimal play by both sides: +1 X wins, -1 O wins, 0 draw.
int minimax_value(const BoardState& board);

// The stochastic policy O follows. O always sees the full board.
class OpponentModel {
 public:
  enum class Kind { UniformRandom, Minimax, EpsilonMinimax };

  // Uniform over valid moves.
  static OpponentModel uniform() noexcept { return OpponentModel(Kind::UniformRandom, 1.0); }
  // Uniform over the moves that are optimal by full-depth minimax.
  static OpponentModel minimax() noexcept { return OpponentModel(Kind::Minimax, 0.0); }
  // Mixes uniform (weight epsilon) with minimax (weight 1 - epsilon).
  // Throws std::invalid_argument unless 0 <= epsilon <= 1.
  static OpponentModel eps_minimax(double epsilon);

  // Accepts "uniform", "minimax" or "eps:<p>".
  static OpponentModel parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  // Weight of the uniform component: 1 for UniformRandom, 0 for Minimax.
  double epsilon() const noexcept { return epsilon_; }

  // Distribution over O's moves on a board with O to move. Throws
  // TerminalState on finished boards and InvalidState if X is to move.
  ActionDistribution distribution(const BoardState& board) const;

  // Inverse of parse().
  std::string to_string() const;

  friend bool operator==(const OpponentModel&, const OpponentModel&) = default;

 private:
  OpponentModel(Kind kind, double epsilon) noexcept : kind_(kind), epsilon_(epsilon) {}

  Kind kind_;
  double epsilon_;
};

inline ActionDistribution opponent_distribution(const OpponentModel& model,
                                                const BoardState& board) {
  return model.distribution(board);
}

}  // namespace rbt
