#include "rbt/sensing.hpp"

#include <charconv>
#include <stdexcept>

#include <fmt/format.h>

namespace rbt {

WindowShape WindowShape::make(int height, int width) {
  if (height < 1 || height > kBoardSide || width < 1 || width > kBoardSide) {
    throw std::invalid_argument(
        fmt::format("window {}x{} does not fit a 3x3 board", height, width));
  }
  return WindowShape{height, width};
}

WindowShape WindowShape::parse(std::string_view text) {
  const auto x = text.find_first_of("xX");
  int h = 0;
  int w = 0;
  if (x != std::string_view::npos) {
    const auto hs = text.substr(0, x);
    const auto ws = text.substr(x + 1);
    const auto hr = std::from_chars(hs.data(), hs.data() + hs.size(), h);
    const auto wr = std::from_chars(ws.data(), ws.data() + ws.size(), w);
    if (hr.ec == std::errc{} && hr.ptr == hs.data() + hs.size() && !hs.empty() &&
        wr.ec == std::errc{} && wr.ptr == ws.data() + ws.size() && !ws.empty()) {
      return make(h, w);
    }
  }
  throw std::invalid_argument("window must look like HxW, got '" + std::string(text) + "'");
}

std::string WindowShape::to_string() const {
  return fmt::format("{}x{}", height, width);
}

bool WindowPlacement::covers(int cell) const noexcept {
  const int r = cell / kBoardSide;
  const int c = cell % kBoardSide;
  return r >= top && r < top + shape.height && c >= left && c < left + shape.width;
}

std::vector<int> WindowPlacement::cells() const {
  std::vector<int> out;
  out.reserve(shape.area());
  for (int r = top; r < top + shape.height; ++r) {
    for (int c = left; c < left + shape.width; ++c) out.push_back(r * kBoardSide + c);
  }
  return out;
}

std::vector<WindowPlacement> all_placements(WindowShape shape) {
  std::vector<WindowPlacement> out;
  out.reserve(shape.placement_count());
  for (int top = 0; top + shape.height <= kBoardSide; ++top) {
    for (int left = 0; left + shape.width <= kBoardSide; ++left) {
      out.push_back(WindowPlacement{top, left, shape});
    }
  }
  return out;
}

Observation make_observation(const BoardState& board, const WindowPlacement& placement) {
  Observation obs{placement, {}};
  const auto cells = placement.cells();
  obs.contents.reserve(cells.size());
  for (int c : cells) obs.contents.push_back(board.at(c));
  return obs;
}

int observation_likelihood(const Observation& obs, const BoardState& state) {
  const auto cells = obs.placement.cells();
  if (cells.size() != obs.contents.size()) return 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (state.at(cells[i]) != obs.contents[i]) return 0;
  }
  return 1;
}

}  // namespace rbt
