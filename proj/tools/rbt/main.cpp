#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "report.hpp"

int main(int argc, char** argv) {
  using namespace rbt;
  using namespace rbt::cli;

  CLI::App app{"Reconnaissance Blind TicTacToe benchmark: Q-mixture vs max-belief policies"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  std::string opponent = "uniform";
  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve the fully-observable Q-table and save it");
  solve_cmd->add_option("--opponent", opponent, "uniform | minimax | eps:<p>")
      ->capture_default_str();
  solve_cmd->add_option("--out", solve.out, "Output Q-table JSON")->required();

  RunOptions run;
  std::string run_window = "2x2";
  std::string run_policy = "mixture";
  std::string trace_path;
  std::string out_path;
  auto* run_cmd = app.add_subcommand("run", "Run N episodes of one policy on one window");
  run_cmd->add_option("--q", run.q, "Q-table JSON")->envname("RBT_QTABLE")->required();
  run_cmd->add_option("--window", run_window, "Sense window HxW")->capture_default_str();
  run_cmd->add_option("--policy", run_policy, "mixture | maxbelief | random")
      ->capture_default_str();
  run_cmd->add_option("--episodes", run.episodes)->capture_default_str();
  run_cmd->add_option("--seed", run.seed)->capture_default_str();
  run_cmd->add_option("--trace", trace_path, "Write per-step JSONL trace");
  run_cmd->add_option("--out", out_path, "Append the summary row to this CSV");
  run_cmd->add_option("--jobs", run.jobs, "Worker threads (0 = all cores)")
      ->capture_default_str();

  SweepOptions sweep;
  std::string sweep_windows = "1x1,2x1,2x2,3x1,3x2";
  std::string sweep_dir = "sweep";
  auto* sweep_cmd = app.add_subcommand("sweep", "Run both policies over a list of windows");
  sweep_cmd->add_option("--q", sweep.q, "Q-table JSON")->envname("RBT_QTABLE")->required();
  sweep_cmd->add_option("--windows", sweep_windows)->capture_default_str();
  sweep_cmd->add_option("--episodes", sweep.episodes)->capture_default_str();
  sweep_cmd->add_option("--seed", sweep.seed)->capture_default_str();
  sweep_cmd->add_option("--out-dir", sweep_dir)->capture_default_str();
  sweep_cmd->add_option("--jobs", sweep.jobs, "Worker threads (0 = all cores)")
      ->capture_default_str();

  ReplayOptions replay;
  std::string replay_window = "2x2";
  std::string replay_policy = "mixture";
  auto* replay_cmd = app.add_subcommand("replay", "Print one episode with its beliefs");
  replay_cmd->add_option("--q", replay.q, "Q-table JSON")->envname("RBT_QTABLE")->required();
  replay_cmd->add_option("--window", replay_window)->capture_default_str();
  replay_cmd->add_option("--policy", replay_policy)->capture_default_str();
  replay_cmd->add_option("--seed", replay.seed)->capture_default_str();
  replay_cmd->add_flag("--verbose", replay.verbose, "Also print max-belief values");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve_cmd) {
      solve.opponent = OpponentModel::parse(opponent);
      cmd_solve(solve, std::cout);
    } else if (*run_cmd) {
      run.window = WindowShape::parse(run_window);
      run.policy = parse_policy(run_policy);
      if (!trace_path.empty()) run.trace = trace_path;
      if (!out_path.empty()) run.out = out_path;
      cmd_run(run, std::cout);
    } else if (*sweep_cmd) {
      sweep.windows = parse_window_list(sweep_windows);
      sweep.out_dir = sweep_dir;
      cmd_sweep(sweep, std::cout);
    } else if (*replay_cmd) {
      replay.window = WindowShape::parse(replay_window);
      replay.policy = parse_policy(replay_policy);
      cmd_replay(replay, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "rbt: " << e.what() << '\n';
    return EXIT_FAILURE;
  }
  return EXIT_SUCCESS;
}
