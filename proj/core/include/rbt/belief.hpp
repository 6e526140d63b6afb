#pragma once

// Exact Bayesian filter over hidden boards. The belief always refers to a
// decision point: X to move, game not over, every support state with the same
// number of plies.

#include <cstddef>
#include <map>

#include "rbt/game.hpp"
#include "rbt/opponent.hpp"
#include "rbt/sensing.hpp"

namespace rbt {

class Belief {
 public:
  using Masses = std::map<StateIndex, double>;

  // Point mass on the given state.
  static Belief point(StateIndex state);

  // Normalizes non-negative weights, dropping exact zeros. Throws EmptySupport
  // when nothing is left and InvalidState when the support breaks the
  // decision-point invariants.
  static Belief from_weights(const Masses& weights);

  // Takes probabilities as given (no rescaling) after checking they are
  // positive and sum to 1 within 1e-9. Used when reloading stored beliefs.
  static Belief from_probabilities(const Masses& probabilities);

  const Masses& masses() const noexcept { return masses_; }
  std::size_t size() const noexcept { return masses_.size(); }
  double probability(StateIndex state) const noexcept;
  bool contains(StateIndex state) const noexcept { return masses_.count(state) != 0; }
  // Plies played in every support state (2t at decision t).
  int plies() const noexcept { return plies_; }

  Masses::const_iterator begin() const noexcept { return masses_.begin(); }
  Masses::const_iterator end() const noexcept { return masses_.end(); }

  friend bool operator==(const Belief&, const Belief&) = default;

 private:
  Belief() = default;

  Masses masses_;
  int plies_ = 0;
};

// Point mass on the empty board.
Belief initial_belief();

// Push the belief through the agent's move and the opponent's reply,
// conditioning on the episode having continued: the move was valid, X did not
// win or fill the board, and O did not win. Throws EmptySupport if no mass
// survives.
Belief predict(const Belief& belief, Action agent_action, const OpponentModel& opponent);

// Bayes update with the deterministic window observation. Throws
// ZeroEvidence if no support state matches.
Belief update(const Belief& belief, const Observation& obs);

// Distribution of the next observation given the agent's action, with the
// window placement uniform over the shape's positions.
std::map<Observation, double> observation_distribution(const Belief& belief,
                                                       Action agent_action,
                                                       const OpponentModel& opponent,
                                                       WindowShape shape);

}  // namespace rbt
