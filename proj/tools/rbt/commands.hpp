#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rbt/env.hpp"
#include "rbt/opponent.hpp"
#include "rbt/sensing.hpp"

namespace rbt::cli {

struct SolveOptions {
  OpponentModel opponent = OpponentModel::uniform();
  std::filesystem::path out;
};

struct RunOptions {
  std::filesystem::path q;
  WindowShape window{2, 2};
  PolicyKind policy = PolicyKind::Mixture;
  std::size_t episodes = 1000;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> trace;
  std::optional<std::filesystem::path> out;
  unsigned jobs = 1;
};

struct SweepOptions {
  std::filesystem::path q;
  std::vector<WindowShape> windows;
  std::size_t episodes = 1000;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir;
  unsigned jobs = 1;
};

struct ReplayOptions {
  std::filesystem::path q;
  WindowShape window{2, 2};
  PolicyKind policy = PolicyKind::Mixture;
  std::uint64_t seed = 0;
  bool verbose = false;
};

// Windows swept when none are given.
std::vector<WindowShape> default_sweep_windows();
std::vector<WindowShape> parse_window_list(const std::string& csv);

// Each command prints a human-readable summary to out and throws rbt::Error
// or std::exception on failure.
void cmd_solve(const SolveOptions& opts, std::ostream& out);
void cmd_run(const RunOptions& opts, std::ostream& out);
void cmd_sweep(const SweepOptions& opts, std::ostream& out);
void cmd_replay(const ReplayOptions& opts, std::ostream& out);

// Human-readable block for one decision step: window grid, support boards with
// probabilities, action sets and values.
void print_step(std::ostream& out, const StepRecord& step, bool verbose, const QTable& q);

}  // namespace rbt::cli
