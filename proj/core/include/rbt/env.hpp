#pragma once

// Reconnaissance Blind TicTacToe: the agent (X) sees only a random window of
// the board before each move; the opponent (O) sees everything. Invalid agent
// moves end the episode with reward -1.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rbt/belief.hpp"
#include "rbt/opponent.hpp"
#include "rbt/policy.hpp"
#include "rbt/sensing.hpp"
#include "rbt/solver.hpp"

namespace rbt {

enum class PolicyKind { Mixture, MaxBelief, UniformRandomBaseline };

// "mixture", "maxbelief", "random".
const char* to_string(PolicyKind kind) noexcept;
PolicyKind parse_policy(std::string_view text);

enum class Outcome { Win, Loss, Draw, InvalidMove };

const char* to_string(Outcome outcome) noexcept;
Outcome parse_outcome(std::string_view text);

struct EpisodeConfig {
  WindowShape shape{2, 2};
  OpponentModel opponent = OpponentModel::uniform();
  PolicyKind policy = PolicyKind::Mixture;
  std::uint64_t seed = 0;
  // Model the agent assumes when predicting O's replies.
  OpponentModel belief_opponent_model = OpponentModel::uniform();
};

struct StepRecord {
  int t = 0;
  // Hidden state at the decision point; never shown to the policy.
  StateIndex true_state = 0;
  Observation observation;
  Belief belief = initial_belief();
  ActionValues mixture_values{};
  ActionSet a_mix;
  ActionSet a_max;
  double iou = 1.0;
  double margin = 0.0;
  Action chosen_action;
  double reward = 0.0;

  std::size_t belief_support_size() const noexcept { return belief.size(); }

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct EpisodeResult {
  std::vector<StepRecord> steps;
  double episode_return = 0.0;
  Outcome outcome = Outcome::Draw;

  friend bool operator==(const EpisodeResult&, const EpisodeResult&) = default;
};

// Uniform over the shape's placements.
WindowPlacement sample_window(WindowShape shape, Rng& rng);

// Plays one episode with a generator seeded from config.seed. Belief-engine
// and Q-table errors propagate; they indicate a harness bug.
EpisodeResult run_episode(const EpisodeConfig& config, const QTable& q);

// Episode i uses seed config.seed + i. Results are ordered by episode index
// and do not depend on jobs (0 picks the hardware concurrency).
std::vector<EpisodeResult> run_episodes(const EpisodeConfig& config, const QTable& q,
                                        std::size_t episodes, unsigned jobs = 1);

}  // namespace rbt
