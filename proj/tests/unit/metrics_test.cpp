#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "rbt/errors.hpp"
#include "rbt/metrics.hpp"

namespace rbt {
namespace {

ActionSet set_of(std::initializer_list<int> cells) {
  ActionSet s;
  for (int c : cells) s.insert(Action(c));
  return s;
}

TEST(Iou, Examples) {
  EXPECT_EQ(iou(set_of({1, 2}), set_of({1, 2})), 1.0);
  EXPECT_EQ(iou(set_of({1}), set_of({2})), 0.0);
  EXPECT_DOUBLE_EQ(iou(set_of({1, 2}), set_of({2, 3})), 1.0 / 3);
  EXPECT_EQ(iou(ActionSet{}, ActionSet{}), 1.0);
}

TEST(Iou, SymmetricAndBounded) {
  for (unsigned a = 0; a < 512; a += 7) {
    for (unsigned b = 0; b < 512; b += 11) {
      const ActionSet x = ActionSet::from_mask(a);
      const ActionSet y = ActionSet::from_mask(b);
      const double v = iou(x, y);
      EXPECT_EQ(v, iou(y, x));
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
      EXPECT_EQ(v == 1.0, x == y);
      if (!x.empty() || !y.empty()) EXPECT_EQ(v == 0.0, (x & y).empty());
    }
  }
}

TEST(ValueMargin, Examples) {
  const ActionValues v{0.5, 0.1, -0.3, -1, -1, -1, -1, -1, -1};
  EXPECT_EQ(value_margin(v, set_of({0}), set_of({0})), 0.0);
  EXPECT_DOUBLE_EQ(value_margin(v, set_of({0}), set_of({1, 2})), 0.5 - (-0.1));
}

TEST(MeanCi95, Examples) {
  const std::vector<double> ones{1, 1, 1, 1};
  const MeanCi a = mean_ci95(ones);
  EXPECT_EQ(a.mean, 1.0);
  EXPECT_EQ(a.ci95, 0.0);

  std::vector<double> pm;
  for (int i = 0; i < 500; ++i) {
    pm.push_back(1.0);
    pm.push_back(-1.0);
  }
  const MeanCi b = mean_ci95(pm);
  EXPECT_NEAR(b.mean, 0.0, 1e-15);
  EXPECT_NEAR(b.ci95, 1.96 * std::sqrt(1000.0 / 999.0) / std::sqrt(1000.0), 1e-12);

  std::vector<double> shifted = pm;
  for (auto& x : shifted) x += 0.25;
  const MeanCi c = mean_ci95(shifted);
  EXPECT_NEAR(c.mean, 0.25, 1e-12);
  EXPECT_NEAR(c.ci95, b.ci95, 1e-12);

  const std::vector<double> single{1.0};
  EXPECT_THROW(mean_ci95(single), InsufficientSamples);
}

StepRecord step(int t, double iou_value, double margin) {
  StepRecord s;
  s.t = t;
  s.iou = iou_value;
  s.margin = margin;
  return s;
}

TEST(AggregateByTimestep, SkipsEpisodesThatEnded) {
  EpisodeResult a;
  a.steps = {step(0, 1.0, 0.0), step(1, 0.5, 0.2), step(2, 0.0, 0.4)};
  EpisodeResult b;
  b.steps = {step(0, 1.0, 0.0), step(1, 1.0, 0.0)};
  const std::vector<EpisodeResult> traces{a, b};
  const auto agg = aggregate_by_timestep(traces);
  ASSERT_EQ(agg.size(), 3u);
  EXPECT_EQ(agg[0].mean_iou, 1.0);
  EXPECT_EQ(agg[0].samples, 2u);
  EXPECT_DOUBLE_EQ(agg[1].mean_iou, 0.75);
  EXPECT_DOUBLE_EQ(agg[1].mean_margin, 0.1);
  EXPECT_EQ(agg[2].samples, 1u);
  EXPECT_DOUBLE_EQ(agg[2].mean_margin, 0.4);
}

TEST(SummarizeReturns, MeanAndInterval) {
  std::vector<EpisodeResult> results(4);
  results[0].episode_return = 1;
  results[1].episode_return = 1;
  results[2].episode_return = -1;
  results[3].episode_return = 0;
  const SweepRow row = summarize_returns(WindowShape{2, 1}, PolicyKind::MaxBelief, results);
  EXPECT_EQ(row.policy, "maxbelief");
  EXPECT_EQ(row.episodes, 4u);
  EXPECT_DOUBLE_EQ(row.mean_return, 0.25);
  EXPECT_GT(row.ci95, 0.0);
}

}  // namespace
}  // namespace rbt
