#include "rbt/belief.hpp"

#include <cmath>

#include <fmt/format.h>

#include "rbt/errors.hpp"

namespace rbt {
namespace {

constexpr double kNormTolerance = 1e-9;

// Checks the decision-point invariants and returns the shared ply count.
int check_support(const Belief::Masses& masses) {
  int plies = -1;
  for (const auto& [state, p] : masses) {
    const BoardState board = decode_state(state);
    if (board.to_move() != Cell::X) {
      throw InvalidState(fmt::format("belief state {} has O to move", state));
    }
    if (is_terminal(board)) {
      throw InvalidState(fmt::format("belief state {} is terminal", state));
    }
    if (plies < 0) {
      plies = board.plies();
    } else if (board.plies() != plies) {
      throw InvalidState("belief mixes boards with different move counts");
    }
  }
  return plies;
}

}  // namespace

Belief Belief::point(StateIndex state) {
  return from_weights({{state, 1.0}});
}

Belief Belief::from_weights(const Masses& weights) {
  double total = 0.0;
  for (const auto& [state, w] : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InvalidState(fmt::format("belief weight {} for state {} is not a finite "
                                     "non-negative number", w, state));
    }
    total += w;
  }
  if (total <= 0.0) throw EmptySupport("belief has no positive mass");
  Belief b;
  for (const auto& [state, w] : weights) {
    if (w > 0.0) b.masses_.emplace_hint(b.masses_.end(), state, w / total);
  }
  b.plies_ = check_support(b.masses_);
  return b;
}

Belief Belief::from_probabilities(const Masses& probabilities) {
  if (probabilities.empty()) throw EmptySupport("belief has no support");
  double total = 0.0;
  for (const auto& [state, p] : probabilities) {
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw InvalidState(fmt::format("belief probability {} for state {} must be positive",
                                     p, state));
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kNormTolerance) {
    throw InvalidState(fmt::format("belief sums to {}, not 1", total));
  }
  Belief b;
  b.masses_ = probabilities;
  b.plies_ = check_support(b.masses_);
  return b;
}

double Belief::probability(StateIndex state) const noexcept {
  const auto it = masses_.find(state);
  return it == masses_.end() ? 0.0 : it->second;
}

Belief initial_belief() {
  return Belief::point(encode_state(BoardState{}));
}

Belief predict(const Belief& belief, Action agent_action, const OpponentModel& opponent) {
  Belief::Masses next;
  for (const auto& [state, p] : belief) {
    const BoardState board = decode_state(state);
    // The episode continued, so the move was legal in the true state.
    if (board.at(agent_action.cell()) != Cell::Empty) continue;
    const BoardState after_x = apply_action(board, agent_action, Cell::X);
    // ...and did not end the game.
    if (is_terminal(after_x)) continue;
    const ActionDistribution reply = opponent.distribution(after_x);
    for (int c = 0; c < kNumActions; ++c) {
      if (reply[c] == 0.0) continue;
      const BoardState after_o = apply_action(after_x, Action(c), Cell::O);
      if (is_terminal(after_o)) continue;
      next[encode_state(after_o)] += p * reply[c];
    }
  }
  if (next.empty()) {
    throw EmptySupport(fmt::format("no belief mass survives action {}", agent_action.cell()));
  }
  return Belief::from_weights(next);
}

Belief update(const Belief& belief, const Observation& obs) {
  Belief::Masses kept;
  for (const auto& [state, p] : belief) {
    if (observation_likelihood(obs, decode_state(state)) == 1) {
      kept.emplace_hint(kept.end(), state, p);
    }
  }
  if (kept.empty()) throw ZeroEvidence("observation is inconsistent with every belief state");
  return Belief::from_weights(kept);
}

std::map<Observation, double> observation_distribution(const Belief& belief,
                                                       Action agent_action,
                                                       const OpponentModel& opponent,
                                                       WindowShape shape) {
  const Belief predicted = predict(belief, agent_action, opponent);
  const auto placements = all_placements(shape);
  const double placement_prob = 1.0 / static_cast<double>(placements.size());
  std::map<Observation, double> out;
  for (const auto& placement : placements) {
    for (const auto& [state, p] : predicted) {
      out[make_observation(decode_state(state), placement)] += placement_prob * p;
    }
  }
  return out;
}

}  // namespace rbt
