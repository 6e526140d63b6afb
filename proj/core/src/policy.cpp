#include "rbt/policy.hpp"

#include <algorithm>
#include <stdexcept>

namespace rbt {

ActionValues mixture_values(const Belief& belief, const QTable& q) {
  ActionValues values{};
  for (const auto& [state, p] : belief) {
    const QRow& row = q.row(state);
    for (int a = 0; a < kNumActions; ++a) values[a] += p * row[a];
  }
  return values;
}

ActionSet argmax_set(const ActionValues& values, double tol) {
  const double best = *std::max_element(values.begin(), values.end());
  ActionSet out;
  for (int a = 0; a < kNumActions; ++a) {
    if (values[a] >= best - tol) out.insert(Action(a));
  }
  return out;
}

Action sample_uniform(ActionSet set, Rng& rng) {
  if (set.empty()) throw std::invalid_argument("sample_uniform: empty action set");
  const auto actions = set.to_vector();
  std::uniform_int_distribution<std::size_t> pick(0, actions.size() - 1);
  return actions[pick(rng)];
}

Decision act_mixture(const Belief& belief, const QTable& q, Rng& rng) {
  Decision d;
  d.values = mixture_values(belief, q);
  d.candidates = argmax_set(d.values);
  d.action = sample_uniform(d.candidates, rng);
  return d;
}

std::vector<StateIndex> max_belief_states(const Belief& belief, double tol) {
  double best = 0.0;
  for (const auto& [state, p] : belief) best = std::max(best, p);
  std::vector<StateIndex> out;
  for (const auto& [state, p] : belief) {
    if (p >= best - tol) out.push_back(state);
  }
  return out;
}

ActionValues alt_values(const Belief& belief, const QTable& q) {
  const auto states = max_belief_states(belief);
  ActionValues values{};
  for (StateIndex s : states) {
    const QRow& row = q.row(s);
    for (int a = 0; a < kNumActions; ++a) values[a] += row[a];
  }
  const double n = static_cast<double>(states.size());
  for (double& v : values) v /= n;
  return values;
}

Decision act_alt(const Belief& belief, const QTable& q, Rng& rng) {
  Decision d;
  d.values = alt_values(belief, q);
  d.candidates = argmax_set(d.values);
  d.action = sample_uniform(d.candidates, rng);
  return d;
}

}  // namespace rbt
