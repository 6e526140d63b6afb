#pragma once

// Greedy policies over a belief: the Q-mixture policy, which weights the
// fully-observable Q by the whole belief, and the max-belief policy, which
// keeps only the most probable states.

#include <array>
#include <random>
#include <vector>

#include "rbt/belief.hpp"
#include "rbt/game.hpp"
#include "rbt/solver.hpp"

namespace rbt {

using Rng = std::mt19937_64;
using ActionValues = std::array<double, kNumActions>;

// Absolute tolerance for every set-valued argmax.
inline constexpr double kTieTolerance = 1e-9;

struct Decision {
  Action action;
  ActionSet candidates;
  ActionValues values;
};

// value[a] = sum_s belief(s) * Q(s, a). Throws MissingQEntry.
ActionValues mixture_values(const Belief& belief, const QTable& q);

// { a : values[a] >= max(values) - tol }.
ActionSet argmax_set(const ActionValues& values, double tol = kTieTolerance);

// Uniform draw from a non-empty set.
Action sample_uniform(ActionSet set, Rng& rng);

Decision act_mixture(const Belief& belief, const QTable& q, Rng& rng);

// States whose probability is within tol of the largest, ascending.
std::vector<StateIndex> max_belief_states(const Belief& belief, double tol = kTieTolerance);

// Mean of Q(s, a) over the max-belief states, each weighted equally.
ActionValues alt_values(const Belief& belief, const QTable& q);

Decision act_alt(const Belief& belief, const QTable& q, Rng& rng);

}  // namespace rbt
