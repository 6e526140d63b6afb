#include "rbt/opponent.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

#include "rbt/errors.hpp"

namespace rbt {
namespace {

constexpr std::int8_t kUnknown = 127;

int solve_minimax(const BoardState& board, std::vector<std::int8_t>& memo) {
  const StateIndex idx = encode_state(board);
  if (memo[idx] != kUnknown) return memo[idx];
  int value = 0;
  switch (status(board)) {
    case GameStatus::XWins:
      value = 1;
      break;
    case GameStatus::OWins:
      value = -1;
      break;
    case GameStatus::Draw:
      value = 0;
      break;
    case GameStatus::InProgress: {
      const Cell mover = board.to_move();
      value = mover == Cell::X ? -2 : 2;
      for (Action a : valid_actions(board).to_vector()) {
        const int child = solve_minimax(apply_action(board, a, mover), memo);
        value = mover == Cell::X ? std::max(value, child) : std::min(value, child);
      }
      break;
    }
  }
  memo[idx] = static_cast<std::int8_t>(value);
  return value;
}

const std::vector<std::int8_t>& minimax_table() {
  static const std::vector<std::int8_t> table = [] {
    std::vector<std::int8_t> memo(kNumEncodings, kUnknown);
    solve_minimax(BoardState{}, memo);
    return memo;
  }();
  return table;
}

}  // namespace

int minimax_value(const BoardState& board) {
  const auto& table = minimax_table();
  const std::int8_t v = table[encode_state(board)];
  if (v == kUnknown) {
    throw InvalidState("board is not reachable from the empty board");
  }
  return v;
}

OpponentModel OpponentModel::eps_minimax(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument(fmt::format("epsilon {} outside [0, 1]", epsilon));
  }
  return OpponentModel(Kind::EpsilonMinimax, epsilon);
}

OpponentModel OpponentModel::parse(std::string_view text) {
  if (text == "uniform") return uniform();
  if (text == "minimax") return minimax();
  if (text.starts_with("eps:")) {
    const std::string digits(text.substr(4));
    std::size_t used = 0;
    double eps = 0;
    try {
      eps = std::stod(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != digits.size()) {
      throw std::invalid_argument("bad epsilon in opponent '" + std::string(text) + "'");
    }
    return eps_minimax(eps);
  }
  throw std::invalid_argument("unknown opponent '" + std::string(text) +
                              "' (expected uniform, minimax or eps:<p>)");
}

std::string OpponentModel::to_string() const {
  switch (kind_) {
    case Kind::UniformRandom:
      return "uniform";
    case Kind::Minimax:
      return "minimax";
    case Kind::EpsilonMinimax:
      return fmt::format("eps:{}", epsilon_);
  }
  return "?";
}

ActionDistribution OpponentModel::distribution(const BoardState& board) const {
  if (is_terminal(board)) {
    throw TerminalState("opponent asked to move on a finished board");
  }
  if (board.to_move() != Cell::O) {
    throw InvalidState("opponent asked to move when X is to move");
  }
  const ActionSet valid = valid_actions(board);
  const auto moves = valid.to_vector();
  ActionDistribution dist{};

  double uniform_weight = 1.0;
  switch (kind_) {
    case Kind::UniformRandom:
      uniform_weight = 1.0;
      break;
    case Kind::Minimax:
      uniform_weight = 0.0;
      break;
    case Kind::EpsilonMinimax:
      uniform_weight = epsilon_;
      break;
  }

  if (uniform_weight > 0.0) {
    const double share = uniform_weight / static_cast<double>(moves.size());
    for (Action a : moves) dist[a.cell()] += share;
  }
  if (uniform_weight < 1.0) {
    // O minimizes X's game value; ties share the mass equally.
    int best = 2;
    std::array<int, kNumActions> values{};
    for (Action a : moves) {
      values[a.cell()] = minimax_value(apply_action(board, a, Cell::O));
      best = std::min(best, values[a.cell()]);
    }
    int ties = 0;
    for (Action a : moves) ties += values[a.cell()] == best;
    const double share = (1.0 - uniform_weight) / static_cast<double>(ties);
    for (Action a : moves) {
      if (values[a.cell()] == best) dist[a.cell()] += share;
    }
  }
  return dist;
}

}  // namespace rbt
