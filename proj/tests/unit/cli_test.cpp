#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "report.hpp"
#include "rbt/solver.hpp"

namespace rbt::cli {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    shared_ = fs::temp_directory_path() / "rbt_cli_test_shared";
    fs::create_directories(shared_);
    save_qtable(solve_q(OpponentModel::uniform()), shared_ / "q.json");
  }
  static void TearDownTestSuite() { fs::remove_all(shared_); }

  void SetUp() override {
    dir_ = shared_ / ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::create_directories(dir_);
  }

  static fs::path q_path() { return shared_ / "q.json"; }

  static fs::path shared_;
  fs::path dir_;
};
fs::path CliTest::shared_;

TEST(ReturnsRow, SixSignificantDigits) {
  SweepRow row{WindowShape{2, 2}, "mixture", 1000, 0.5321234567, 0.06123456};
  EXPECT_EQ(format_returns_row(row), "2x2,mixture,1000,0.532123,0.0612346");
  const TimestepAggregate agg{1, 0.987654321, 0.0123456789, 812};
  EXPECT_EQ(format_timestep_row(WindowShape{2, 1}, "mix_vs_max", agg),
            "2x1,mix_vs_max,1,0.987654,0.0123457,812");
}

TEST_F(CliTest, AppendWritesHeaderOnce) {
  const fs::path csv = dir_ / "returns.csv";
  append_returns_row(csv, SweepRow{WindowShape{1, 1}, "mixture", 10, 0.2, 0.5});
  append_returns_row(csv, SweepRow{WindowShape{1, 1}, "maxbelief", 10, 0.1, 0.5});
  EXPECT_EQ(slurp(csv), std::string(kReturnsHeader) +
                            "\n1x1,mixture,10,0.2,0.5\n1x1,maxbelief,10,0.1,0.5\n");
}

TEST_F(CliTest, TraceRoundTripIsLossless) {
  const QTable q = load_qtable(q_path());
  EpisodeConfig c;
  c.shape = WindowShape{2, 1};
  c.seed = 31;
  const auto episodes = run_episodes(c, q, 25);
  std::stringstream ss;
  write_trace(ss, episodes);
  const auto back = read_trace(ss);
  std::vector<StepRecord> flat;
  for (const auto& e : episodes) flat.insert(flat.end(), e.steps.begin(), e.steps.end());
  ASSERT_EQ(back.size(), flat.size());
  for (std::size_t i = 0; i < flat.size(); ++i) EXPECT_EQ(back[i], flat[i]) << i;
}

TEST_F(CliTest, SweepOutputsAndRerunsAreByteIdentical) {
  SweepOptions opts;
  opts.q = q_path();
  opts.episodes = 60;
  opts.seed = 4;
  opts.out_dir = dir_ / "a";
  std::ostringstream log;
  cmd_sweep(opts, log);
  opts.out_dir = dir_ / "b";
  opts.jobs = 2;
  cmd_sweep(opts, log);

  for (const char* name : {"returns.csv", "timestep_metrics.csv", "returns.svg", "manifest.json"}) {
    const std::string a = slurp(dir_ / "a" / name);
    EXPECT_FALSE(a.empty()) << name;
    EXPECT_EQ(a, slurp(dir_ / "b" / name)) << name;
  }

  std::istringstream returns(slurp(dir_ / "a" / "returns.csv"));
  std::string line;
  std::getline(returns, line);
  EXPECT_EQ(line, kReturnsHeader);
  int rows = 0;
  while (std::getline(returns, line)) ++rows;
  EXPECT_EQ(rows, 10);

  std::istringstream metrics(slurp(dir_ / "a" / "timestep_metrics.csv"));
  std::getline(metrics, line);
  EXPECT_EQ(line, kTimestepHeader);
  int t0 = 0;
  while (std::getline(metrics, line)) {
    if (line.find(",mix_vs_max,0,") != std::string::npos) {
      EXPECT_NE(line.find(",0,1,0,60"), std::string::npos) << line;
      ++t0;
    }
  }
  EXPECT_EQ(t0, 5);
  EXPECT_NE(slurp(dir_ / "a" / "returns.svg").find("<svg"), std::string::npos);
  EXPECT_NE(slurp(dir_ / "a" / "manifest.json").find("\"sha256\""), std::string::npos);
}

TEST_F(CliTest, RunAppendsAndWritesTrace) {
  RunOptions opts;
  opts.q = q_path();
  opts.window = WindowShape{3, 3};
  opts.episodes = 40;
  opts.trace = dir_ / "trace.jsonl";
  opts.out = dir_ / "out.csv";
  std::ostringstream log;
  cmd_run(opts, log);
  opts.policy = PolicyKind::MaxBelief;
  cmd_run(opts, log);
  std::istringstream csv(slurp(*opts.out));
  std::string header, mix, max;
  std::getline(csv, header);
  std::getline(csv, mix);
  std::getline(csv, max);
  // Full window: identical returns.
  EXPECT_EQ(mix.substr(mix.find(",40,")), max.substr(max.find(",40,")));
  EXPECT_TRUE(fs::exists(dir_ / "out.csv.manifest.json"));
  std::ifstream trace(*opts.trace);
  EXPECT_FALSE(read_trace(trace).empty());
}

TEST_F(CliTest, ReplayStartsFromTheEmptyBoard) {
  ReplayOptions opts;
  opts.q = q_path();
  opts.seed = 9;
  opts.verbose = true;
  std::ostringstream out;
  cmd_replay(opts, out);
  const std::string text = out.str();
  EXPECT_NE(text.find("t=0"), std::string::npos);
  EXPECT_NE(text.find("belief: 1 state(s)"), std::string::npos);
  EXPECT_NE(text.find("(true)"), std::string::npos);
  EXPECT_NE(text.find("probability total: 1.00"), std::string::npos);
  EXPECT_NE(text.find("Q_max:"), std::string::npos);
  EXPECT_NE(text.find("outcome: "), std::string::npos);
}

TEST(WindowList, Parsing) {
  EXPECT_EQ(parse_window_list("1x1,3x2").size(), 2u);
  EXPECT_THROW(parse_window_list(""), std::invalid_argument);
  EXPECT_THROW(parse_window_list("4x1"), std::invalid_argument);
  EXPECT_EQ(default_sweep_windows().size(), 5u);
}

}  // namespace
}  // namespace rbt::cli
