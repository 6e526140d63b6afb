#pragma once

// Comparison metrics between the mixture and max-belief policies, and return
// aggregation.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rbt/belief.hpp"
#include "rbt/env.hpp"
#include "rbt/policy.hpp"
#include "rbt/sensing.hpp"
#include "rbt/solver.hpp"

namespace rbt {

// Jaccard index |a & b| / |a | b|. Two empty sets count as identical.
double iou(ActionSet a, ActionSet b) noexcept;

// Mixture value of the mixture policy's action minus the mean mixture value
// over the max-belief policy's actions.
double value_margin(const ActionValues& mixed, ActionSet a_mix, ActionSet a_max);
double value_margin(const Belief& belief, const QTable& q);

struct MeanCi {
  double mean = 0.0;
  // 1.96 * sample standard deviation / sqrt(n).
  double ci95 = 0.0;
};

// Throws InsufficientSamples when fewer than two values are given.
MeanCi mean_ci95(std::span<const double> values);

struct TimestepAggregate {
  int t = 0;
  double mean_iou = 0.0;
  double mean_margin = 0.0;
  std::size_t samples = 0;
};

// Per-step means over the episodes that reached each step.
std::vector<TimestepAggregate> aggregate_by_timestep(std::span<const EpisodeResult> traces);

struct SweepRow {
  WindowShape shape;
  std::string policy;
  std::size_t episodes = 0;
  double mean_return = 0.0;
  double ci95 = 0.0;
};

SweepRow summarize_returns(WindowShape shape, PolicyKind policy,
                           std::span<const EpisodeResult> results);

}  // namespace rbt
