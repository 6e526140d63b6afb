#include "rbt/game.hpp"

#include <algorithm>
#include <deque>

#include "rbt/errors.hpp"

namespace rbt {
namespace {

constexpr std::array<std::array<int, 3>, 8> kLines{{
    {0, 1, 2}, {3, 4, 5}, {6, 7, 8},  // rows
    {0, 3, 6}, {1, 4, 7}, {2, 5, 8},  // cols
    {0, 4, 8}, {2, 4, 6},             // diagonals
}};

bool has_line(const BoardState::Cells& cells, Cell mark) noexcept {
  return std::any_of(kLines.begin(), kLines.end(), [&](const auto& line) {
    return cells[line[0]] == mark && cells[line[1]] == mark &&
           cells[line[2]] == mark;
  });
}

// Empty string when valid, otherwise the reason.
std::string violation(const BoardState::Cells& cells) {
  const auto xs = std::count(cells.begin(), cells.end(), Cell::X);
  const auto os = std::count(cells.begin(), cells.end(), Cell::O);
  if (xs - os != 0 && xs - os != 1) {
    return "count(X) - count(O) must be 0 or 1";
  }
  if (has_line(cells, Cell::X) && has_line(cells, Cell::O)) {
    return "both sides have three in a row";
  }
  return {};
}

}  // namespace

char to_char(Cell cell) noexcept {
  switch (cell) {
    case Cell::X:
      return 'X';
    case Cell::O:
      return 'O';
    case Cell::Empty:
      break;
  }
  return '.';
}

const char* to_string(GameStatus status) noexcept {
  switch (status) {
    case GameStatus::InProgress:
      return "in_progress";
    case GameStatus::XWins:
      return "x_wins";
    case GameStatus::OWins:
      return "o_wins";
    case GameStatus::Draw:
      return "draw";
  }
  return "?";
}

std::vector<Action> ActionSet::to_vector() const {
  std::vector<Action> out;
  out.reserve(size());
  for (int c = 0; c < kNumActions; ++c) {
    if ((mask_ >> c) & 1u) out.emplace_back(c);
  }
  return out;
}

std::string to_string(ActionSet set) {
  std::string out = "{";
  bool first = true;
  for (Action a : set.to_vector()) {
    if (!first) out += ',';
    out += std::to_string(a.cell());
    first = false;
  }
  out += '}';
  return out;
}

BoardState BoardState::from_cells(const Cells& cells) {
  if (auto why = violation(cells); !why.empty()) {
    throw InvalidState("invalid board: " + why);
  }
  return BoardState(cells);
}

BoardState BoardState::parse(const std::string& text) {
  Cells cells{};
  int n = 0;
  for (char ch : text) {
    if (ch == ' ' || ch == '\n' || ch == '\t' || ch == '|') continue;
    if (n == kNumCells) throw InvalidState("board text has more than 9 cells");
    switch (ch) {
      case '.':
      case '_':
        cells[n] = Cell::Empty;
        break;
      case 'X':
      case 'x':
        cells[n] = Cell::X;
        break;
      case 'O':
      case 'o':
        cells[n] = Cell::O;
        break;
      default:
        throw InvalidState(std::string("unexpected board character '") + ch +
                           "'");
    }
    ++n;
  }
  if (n != kNumCells) throw InvalidState("board text has fewer than 9 cells");
  return from_cells(cells);
}

int BoardState::count(Cell mark) const noexcept {
  return static_cast<int>(std::count(cells_.begin(), cells_.end(), mark));
}

int BoardState::plies() const noexcept {
  return kNumCells - count(Cell::Empty);
}

Cell BoardState::to_move() const noexcept {
  return count(Cell::X) == count(Cell::O) ? Cell::X : Cell::O;
}

StateIndex encode_state(const BoardState& board) noexcept {
  StateIndex index = 0;
  for (int i = kNumCells - 1; i >= 0; --i) {
    index = index * 3 + static_cast<StateIndex>(board.at(i));
  }
  return index;
}

BoardState decode_state(StateIndex index) {
  if (index >= kNumEncodings) {
    throw InvalidState("state index " + std::to_string(index) +
                       " out of range");
  }
  BoardState::Cells cells{};
  for (int i = 0; i < kNumCells; ++i) {
    cells[i] = static_cast<Cell>(index % 3);
    index /= 3;
  }
  return BoardState::from_cells(cells);
}

GameStatus status(const BoardState& board) noexcept {
  if (has_line(board.cells(), Cell::X)) return GameStatus::XWins;
  if (has_line(board.cells(), Cell::O)) return GameStatus::OWins;
  if (board.count(Cell::Empty) == 0) return GameStatus::Draw;
  return GameStatus::InProgress;
}

ActionSet valid_actions(const BoardState& board) noexcept {
  ActionSet out;
  for (int c = 0; c < kNumCells; ++c) {
    if (board.at(c) == Cell::Empty) out.insert(Action(c));
  }
  return out;
}

BoardState apply_action(const BoardState& board, Action action, Cell player) {
  if (player == Cell::Empty) {
    throw InvalidState("apply_action: player must be X or O");
  }
  if (board.to_move() != player) {
    throw InvalidState(std::string("apply_action: not ") + to_char(player) +
                       "'s turn");
  }
  if (board.at(action.cell()) != Cell::Empty) {
    throw OccupiedCell("cell " + std::to_string(action.cell()) +
                       " is occupied");
  }
  BoardState::Cells cells = board.cells();
  cells[action.cell()] = player;
  // Playing on after a win can put lines on both sides.
  if (auto why = violation(cells); !why.empty()) {
    throw InvalidState("apply_action: " + why);
  }
  return BoardState(cells);
}

const std::vector<StateIndex>& enumerate_reachable_states() {
  static const std::vector<StateIndex> states = [] {
    std::vector<bool> seen(kNumEncodings, false);
    std::vector<StateIndex> out;
    std::deque<BoardState> frontier{BoardState{}};
    seen[0] = true;
    while (!frontier.empty()) {
      const BoardState board = frontier.front();
      frontier.pop_front();
      out.push_back(encode_state(board));
      if (is_terminal(board)) continue;
      const Cell mover = board.to_move();
      for (Action a : valid_actions(board).to_vector()) {
        BoardState next = apply_action(board, a, mover);
        const StateIndex idx = encode_state(next);
        if (!seen[idx]) {
          seen[idx] = true;
          frontier.push_back(next);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }();
  return states;
}

std::string render(const BoardState& board) {
  std::string out;
  for (int r = 0; r < kBoardSide; ++r) {
    for (int c = 0; c < kBoardSide; ++c) out += to_char(board.at(r, c));
    out += '\n';
  }
  return out;
}

}  // namespace rbt
