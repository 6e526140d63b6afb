#pragma once

// Rectangular sensing windows and the observations they produce.

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "rbt/game.hpp"

namespace rbt {

struct WindowShape {
  int height = 1;
  int width = 1;

  // Throws std::invalid_argument unless both sides are in 1..3.
  static WindowShape make(int height, int width);
  // "HxW", e.g. "2x1" is two rows by one column.
  static WindowShape parse(std::string_view text);

  int area() const noexcept { return height * width; }
  int placement_count() const noexcept {
    return (kBoardSide + 1 - height) * (kBoardSide + 1 - width);
  }
  std::string to_string() const;

  friend auto operator<=>(const WindowShape&, const WindowShape&) = default;
};

struct WindowPlacement {
  int top = 0;
  int left = 0;
  WindowShape shape;

  bool covers(int cell) const noexcept;
  // Covered cells in row-major window order.
  std::vector<int> cells() const;

  friend auto operator<=>(const WindowPlacement&, const WindowPlacement&) = default;
};

// All (4-h)(4-w) placements, ordered by (top, left).
std::vector<WindowPlacement> all_placements(WindowShape shape);

struct Observation {
  WindowPlacement placement;
  // Row-major within the window; size is the window area.
  std::vector<Cell> contents;

  friend auto operator<=>(const Observation&, const Observation&) = default;
};

// The true contents of board under placement.
Observation make_observation(const BoardState& board, const WindowPlacement& placement);

// 1 if every covered cell of state matches the observation, else 0.
int observation_likelihood(const Observation& obs, const BoardState& state);

}  // namespace rbt
