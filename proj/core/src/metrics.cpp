#include "rbt/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "rbt/errors.hpp"

namespace rbt {

double iou(ActionSet a, ActionSet b) noexcept {
  const int uni = (a | b).size();
  if (uni == 0) return 1.0;
  return static_cast<double>((a & b).size()) / static_cast<double>(uni);
}

double value_margin(const ActionValues& mixed, ActionSet a_mix, ActionSet a_max) {
  if (a_mix.empty() || a_max.empty()) {
    throw std::invalid_argument("value_margin: action sets must be non-empty");
  }
  // Mixed values agree on A_mix up to the tie tolerance; use the first.
  const double chosen = mixed[a_mix.to_vector().front().cell()];
  double alt = 0.0;
  for (Action a : a_max.to_vector()) alt += mixed[a.cell()];
  alt /= static_cast<double>(a_max.size());
  return chosen - alt;
}

double value_margin(const Belief& belief, const QTable& q) {
  const ActionValues mixed = mixture_values(belief, q);
  return value_margin(mixed, argmax_set(mixed), argmax_set(alt_values(belief, q)));
}

MeanCi mean_ci95(std::span<const double> values) {
  if (values.size() < 2) {
    throw InsufficientSamples(
        fmt::format("need at least 2 samples for a confidence interval, got {}", values.size()));
  }
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  return MeanCi{mean, 1.96 * sd / std::sqrt(n)};
}

std::vector<TimestepAggregate> aggregate_by_timestep(std::span<const EpisodeResult> traces) {
  std::vector<TimestepAggregate> out;
  for (const auto& episode : traces) {
    for (const auto& step : episode.steps) {
      if (static_cast<std::size_t>(step.t) >= out.size()) out.resize(step.t + 1);
      auto& agg = out[step.t];
      agg.mean_iou += step.iou;
      agg.mean_margin += step.margin;
      ++agg.samples;
    }
  }
  for (std::size_t t = 0; t < out.size(); ++t) {
    out[t].t = static_cast<int>(t);
    if (out[t].samples > 0) {
      out[t].mean_iou /= static_cast<double>(out[t].samples);
      out[t].mean_margin /= static_cast<double>(out[t].samples);
    }
  }
  return out;
}

SweepRow summarize_returns(WindowShape shape, PolicyKind policy,
                           std::span<const EpisodeResult> results) {
  std::vector<double> returns;
  returns.reserve(results.size());
  for (const auto& r : results) returns.push_back(r.episode_return);
  const MeanCi stats = mean_ci95(returns);
  return SweepRow{shape, to_string(policy), results.size(), stats.mean, stats.ci95};
}

}  // namespace rbt
