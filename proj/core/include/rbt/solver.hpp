#pragma once

// Exact fully-observable Q-function for X against a known stochastic
// opponent, computed by memoized expectimax with no discounting.

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rbt/game.hpp"
#include "rbt/opponent.hpp"

namespace rbt {

using QRow = std::array<double, kNumActions>;

inline constexpr int kQTableFormatVersion = 1;

// Q(s, a) for every X-to-move, non-terminal reachable state. Rows are stored
// densely by state index so lookups stay O(1).
class QTable {
 public:
  explicit QTable(OpponentModel opponent);

  const OpponentModel& opponent() const noexcept { return opponent_; }
  double gamma() const noexcept { return 1.0; }

  bool contains(StateIndex state) const noexcept;
  // Throws MissingQEntry if the state has no row.
  const QRow& row(StateIndex state) const;
  void set(StateIndex state, const QRow& row);

  // max_a Q(state, a).
  double value(StateIndex state) const;

  std::size_t size() const noexcept { return count_; }
  // States with a row, ascending.
  std::vector<StateIndex> states() const;

  friend bool operator==(const QTable&, const QTable&) = default;

 private:
  OpponentModel opponent_;
  std::vector<QRow> rows_;
  std::vector<bool> present_;
  std::size_t count_ = 0;
};

QTable solve_q(const OpponentModel& opponent);

// JSON, format version 1. Throws FormatVersionMismatch or CorruptEntry on
// load; std::runtime_error on I/O failure.
std::string serialize_qtable(const QTable& q);
QTable parse_qtable(std::string_view json_text);
void save_qtable(const QTable& q, const std::filesystem::path& path);
QTable load_qtable(const std::filesystem::path& path);

}  // namespace rbt
