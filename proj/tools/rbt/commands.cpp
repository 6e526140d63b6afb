#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "report.hpp"
#include "rbt/metrics.hpp"
#include "rbt/solver.hpp"

namespace rbt::cli {
namespace {

using nlohmann::json;

// Q-tables carry their opponent; the environment and the belief filter use
// the same model.
EpisodeConfig config_for(const QTable& q, WindowShape window, PolicyKind policy,
                         std::uint64_t seed) {
  EpisodeConfig c;
  c.shape = window;
  c.opponent = q.opponent();
  c.belief_opponent_model = q.opponent();
  c.policy = policy;
  c.seed = seed;
  return c;
}

json manifest(const std::string& command, const std::filesystem::path& q_path,
              const QTable& q, const std::vector<WindowShape>& windows,
              const std::vector<PolicyKind>& policies, std::uint64_t seed,
              std::size_t episodes) {
  json w = json::array();
  for (const auto& s : windows) w.push_back(s.to_string());
  json p = json::array();
  for (auto k : policies) p.push_back(to_string(k));
  return json{
      {"tool", "rbt"},
      {"version", kToolVersion},
      {"command", command},
      {"opponent", q.opponent().to_string()},
      {"belief_opponent_model", q.opponent().to_string()},
      {"windows", w},
      {"policies", p},
      {"seed", seed},
      {"episodes", episodes},
      {"seed_rule", "episode i uses seed + i"},
      {"qtable", {{"path", q_path.string()}, {"sha256", file_sha256(q_path)}}},
  };
}

}  // namespace

std::vector<WindowShape> default_sweep_windows() {
  return {WindowShape{1, 1}, WindowShape{2, 1}, WindowShape{2, 2}, WindowShape{3, 1},
          WindowShape{3, 2}};
}

std::vector<WindowShape> parse_window_list(const std::string& csv) {
  std::vector<WindowShape> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(WindowShape::parse(item));
  }
  if (out.empty()) throw std::invalid_argument("empty window list");
  return out;
}

void cmd_solve(const SolveOptions& opts, std::ostream& out) {
  const QTable q = solve_q(opts.opponent);
  save_qtable(q, opts.out);
  out << fmt::format("opponent: {}\n", opts.opponent.to_string());
  out << fmt::format("reachable states: {}\n", enumerate_reachable_states().size());
  out << fmt::format("q-table entries: {}\n", q.size());
  out << fmt::format("empty-board value: {:.12g}\n", q.value(encode_state(BoardState{})));
  out << fmt::format("wrote {}\n", opts.out.string());
}

void cmd_run(const RunOptions& opts, std::ostream& out) {
  const QTable q = load_qtable(opts.q);
  const EpisodeConfig config = config_for(q, opts.window, opts.policy, opts.seed);
  const auto results = run_episodes(config, q, opts.episodes, opts.jobs);
  const SweepRow row = summarize_returns(opts.window, opts.policy, results);

  out << kReturnsHeader << '\n' << format_returns_row(row) << '\n';
  if (opts.out) {
    append_returns_row(*opts.out, row);
    auto m = manifest("run", opts.q, q, {opts.window}, {opts.policy}, opts.seed, opts.episodes);
    write_text_file(opts.out->string() + ".manifest.json", m.dump(2) + "\n");
  }
  if (opts.trace) {
    std::ofstream trace(*opts.trace, std::ios::binary | std::ios::trunc);
    if (!trace) throw std::runtime_error("cannot open " + opts.trace->string());
    write_trace(trace, results);
    if (!trace) throw std::runtime_error("failed writing " + opts.trace->string());
  }
}

void cmd_sweep(const SweepOptions& opts, std::ostream& out) {
  const QTable q = load_qtable(opts.q);
  const std::vector<WindowShape> windows =
      opts.windows.empty() ? default_sweep_windows() : opts.windows;
  const std::vector<PolicyKind> policies{PolicyKind::Mixture, PolicyKind::MaxBelief};
  std::filesystem::create_directories(opts.out_dir);

  std::vector<SweepRow> rows;
  std::string returns_csv = std::string(kReturnsHeader) + "\n";
  std::string timestep_csv = std::string(kTimestepHeader) + "\n";
  for (const auto& window : windows) {
    for (PolicyKind policy : policies) {
      const auto results =
          run_episodes(config_for(q, window, policy, opts.seed), q, opts.episodes, opts.jobs);
      rows.push_back(summarize_returns(window, policy, results));
      returns_csv += format_returns_row(rows.back()) + "\n";
      out << format_returns_row(rows.back()) << '\n';
      if (policy == PolicyKind::Mixture) {
        for (const auto& agg : aggregate_by_timestep(results)) {
          timestep_csv += format_timestep_row(window, "mix_vs_max", agg) + "\n";
        }
      }
    }
  }
  write_text_file(opts.out_dir / "returns.csv", returns_csv);
  write_text_file(opts.out_dir / "timestep_metrics.csv", timestep_csv);
  write_text_file(opts.out_dir / "returns.svg", returns_svg(rows));
  write_text_file(opts.out_dir / "manifest.json",
                  manifest("sweep", opts.q, q, windows, policies, opts.seed, opts.episodes)
                          .dump(2) +
                      "\n");
  out << fmt::format("wrote returns.csv, timestep_metrics.csv, returns.svg, manifest.json to {}\n",
                     opts.out_dir.string());
}

void print_step(std::ostream& out, const StepRecord& step, bool verbose, const QTable& q) {
  const auto& pl = step.observation.placement;
  out << fmt::format("t={}  window {} at row {}, col {}\n", step.t, pl.shape.to_string(), pl.top,
                     pl.left);
  // Observation grid: unseen cells are blank.
  const auto covered = pl.cells();
  for (int r = 0; r < kBoardSide; ++r) {
    std::string line = "  |";
    for (int c = 0; c < kBoardSide; ++c) {
      const int cell = r * kBoardSide + c;
      char ch = ' ';
      for (std::size_t i = 0; i < covered.size(); ++i) {
        if (covered[i] == cell) ch = to_char(step.observation.contents[i]);
      }
      line += ch;
    }
    out << line << "|\n";
  }

  out << fmt::format("belief: {} state(s)\n", step.belief.size());
  constexpr std::size_t kPerLine = 8;
  std::vector<std::pair<StateIndex, double>> support(step.belief.begin(), step.belief.end());
  double total = 0.0;
  for (std::size_t start = 0; start < support.size(); start += kPerLine) {
    const std::size_t stop = std::min(support.size(), start + kPerLine);
    for (int r = 0; r < kBoardSide; ++r) {
      std::string line = " ";
      for (std::size_t i = start; i < stop; ++i) {
        const BoardState b = decode_state(support[i].first);
        line += "  ";
        for (int c = 0; c < kBoardSide; ++c) line += to_char(b.at(r, c));
        line += "    ";
      }
      out << line << '\n';
    }
    std::string probs = " ";
    for (std::size_t i = start; i < stop; ++i) {
      probs += fmt::format(" {:<8.4f}", support[i].second);
      total += support[i].second;
    }
    out << probs << '\n';
    std::string marks = " ";
    for (std::size_t i = start; i < stop; ++i) {
      marks += fmt::format(" {:<8}", support[i].first == step.true_state ? "(true)" : "");
    }
    out << marks << '\n';
  }
  out << fmt::format("probability total: {:.2f}\n", total);
  out << fmt::format("A_mix: {}  A_max: {}  IoU: {:.4f}  M_alt: {:.4f}\n", to_string(step.a_mix),
                     to_string(step.a_max), step.iou, step.margin);
  std::string values = "Q~:";
  for (double v : step.mixture_values) values += fmt::format(" {:+.4f}", v);
  out << values << '\n';
  if (verbose) {
    const auto smax = max_belief_states(step.belief);
    std::string alt = "Q_max:";
    for (double v : alt_values(step.belief, q)) alt += fmt::format(" {:+.4f}", v);
    out << alt << fmt::format("  (|S_max| = {})\n", smax.size());
  }
  out << fmt::format("chosen action: {} (row {}, col {})  reward: {:g}\n\n",
                     step.chosen_action.cell(), step.chosen_action.row(),
                     step.chosen_action.col(), step.reward);
}

void cmd_replay(const ReplayOptions& opts, std::ostream& out) {
  const QTable q = load_qtable(opts.q);
  const EpisodeResult result =
      run_episode(config_for(q, opts.window, opts.policy, opts.seed), q);
  out << fmt::format("replay: window {}, policy {}, opponent {}, seed {}\n\n",
                     opts.window.to_string(), to_string(opts.policy), q.opponent().to_string(),
                     opts.seed);
  for (const auto& step : result.steps) print_step(out, step, opts.verbose, q);
  out << fmt::format("outcome: {}  return: {:g}\n", to_string(result.outcome),
                     result.episode_return);
}

}  // namespace rbt::cli
