#pragma once

// TicTacToe ground-truth dynamics shared by the solver, the belief engine and
// the environment. The agent is always X and always moves first.

#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace rbt {

inline constexpr int kBoardSide = 3;
inline constexpr int kNumCells = 9;
inline constexpr int kNumActions = 9;
// 3^9: every base-3 digit string, valid or not.
inline constexpr std::uint32_t kNumEncodings = 19683;

using StateIndex = std::uint32_t;

enum class Cell : std::uint8_t { Empty = 0, X = 1, O = 2 };

char to_char(Cell cell) noexcept;

enum class GameStatus : std::uint8_t { InProgress, XWins, OWins, Draw };

const char* to_string(GameStatus status) noexcept;

// A cell to mark, row-major: cell = row * 3 + col.
class Action {
 public:
  constexpr Action() = default;
  explicit constexpr Action(int cell) : cell_(static_cast<std::uint8_t>(cell)) {}

  constexpr int cell() const noexcept { return cell_; }
  constexpr int row() const noexcept { return cell_ / kBoardSide; }
  constexpr int col() const noexcept { return cell_ % kBoardSide; }

  friend constexpr auto operator<=>(Action, Action) = default;

 private:
  std::uint8_t cell_ = 0;
};

// Set of actions stored as a 9-bit mask.
class ActionSet {
 public:
  constexpr ActionSet() = default;

  static constexpr ActionSet from_mask(std::uint16_t mask) noexcept {
    ActionSet s;
    s.mask_ = mask & kFullMask;
    return s;
  }
  static constexpr ActionSet all() noexcept { return from_mask(kFullMask); }

  constexpr void insert(Action a) noexcept {
    mask_ = static_cast<std::uint16_t>(mask_ | (1u << a.cell()));
  }
  constexpr bool contains(Action a) const noexcept {
    return (mask_ >> a.cell()) & 1u;
  }
  constexpr int size() const noexcept { return std::popcount(mask_); }
  constexpr bool empty() const noexcept { return mask_ == 0; }
  constexpr std::uint16_t mask() const noexcept { return mask_; }

  // Ascending by cell.
  std::vector<Action> to_vector() const;

  friend constexpr ActionSet operator&(ActionSet a, ActionSet b) noexcept {
    return from_mask(a.mask_ & b.mask_);
  }
  friend constexpr ActionSet operator|(ActionSet a, ActionSet b) noexcept {
    return from_mask(a.mask_ | b.mask_);
  }
  friend constexpr bool operator==(ActionSet, ActionSet) = default;

 private:
  static constexpr std::uint16_t kFullMask = 0x1FF;
  std::uint16_t mask_ = 0;
};

std::string to_string(ActionSet set);

// A valid TicTacToe position: count(X) - count(O) is 0 or 1 and at most one
// side owns a completed line. Invalid boards cannot be constructed.
class BoardState {
 public:
  using Cells = std::array<Cell, kNumCells>;

  // The empty board.
  BoardState() = default;

  // Throws InvalidState if the cells break a board invariant.
  static BoardState from_cells(const Cells& cells);

  // Parses 9 characters from {'.', 'X', 'O'} (whitespace ignored).
  static BoardState parse(const std::string& text);

  const Cells& cells() const noexcept { return cells_; }
  Cell at(int cell) const noexcept { return cells_[cell]; }
  Cell at(int row, int col) const noexcept {
    return cells_[row * kBoardSide + col];
  }

  int count(Cell mark) const noexcept;
  // Number of marks on the board (plies played).
  int plies() const noexcept;
  // X when counts are equal, O otherwise.
  Cell to_move() const noexcept;

  friend bool operator==(const BoardState&, const BoardState&) = default;

 private:
  explicit BoardState(const Cells& cells) : cells_(cells) {}
  friend BoardState apply_action(const BoardState&, Action, Cell);

  Cells cells_{};
};

StateIndex encode_state(const BoardState& board) noexcept;

// Throws InvalidState if index is out of range or the digits do not form a
// valid board.
BoardState decode_state(StateIndex index);

GameStatus status(const BoardState& board) noexcept;

inline bool is_terminal(const BoardState& board) noexcept {
  return status(board) != GameStatus::InProgress;
}

ActionSet valid_actions(const BoardState& board) noexcept;

// Marks the target cell for player. Throws OccupiedCell if the cell is taken
// and InvalidState if it is not player's turn or player is Empty.
BoardState apply_action(const BoardState& board, Action action, Cell player);

// Every board reachable from the empty board by alternating legal play,
// terminal boards included, sorted ascending. Computed once.
const std::vector<StateIndex>& enumerate_reachable_states();

// Three-line ASCII rendering, '.' for empty cells.
std::string render(const BoardState& board);

}  // namespace rbt
