#include "report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <openssl/evp.h>

namespace rbt::cli {

using nlohmann::json;

std::string format_returns_row(const SweepRow& row) {
  return fmt::format("{},{},{},{:.6g},{:.6g}", row.shape.to_string(), row.policy,
                     row.episodes, row.mean_return, row.ci95);
}

std::string format_timestep_row(WindowShape shape, const std::string& policy_pair,
                                const TimestepAggregate& agg) {
  return fmt::format("{},{},{},{:.6g},{:.6g},{}", shape.to_string(), policy_pair, agg.t,
                     agg.mean_iou, agg.mean_margin, agg.samples);
}

void append_returns_row(const std::filesystem::path& path, const SweepRow& row) {
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(path, ec) ||
                     std::filesystem::file_size(path, ec) == 0;
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for appending");
  if (fresh) out << kReturnsHeader << '\n';
  out << format_returns_row(row) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

namespace {

std::string cells_to_string(const std::vector<Cell>& cells) {
  std::string s;
  for (Cell c : cells) s += to_char(c);
  return s;
}

std::vector<Cell> cells_from_string(const std::string& s) {
  std::vector<Cell> out;
  for (char ch : s) {
    switch (ch) {
      case '.':
        out.push_back(Cell::Empty);
        break;
      case 'X':
        out.push_back(Cell::X);
        break;
      case 'O':
        out.push_back(Cell::O);
        break;
      default:
        throw std::invalid_argument(std::string("bad cell character '") + ch + "' in trace");
    }
  }
  return out;
}

json action_set_to_json(ActionSet set) {
  json arr = json::array();
  for (Action a : set.to_vector()) arr.push_back(a.cell());
  return arr;
}

ActionSet action_set_from_json(const json& j) {
  ActionSet set;
  for (const auto& v : j) {
    const int cell = v.get<int>();
    if (cell < 0 || cell >= kNumActions) throw std::invalid_argument("action out of range in trace");
    set.insert(Action(cell));
  }
  return set;
}

}  // namespace

json step_to_json(const StepRecord& step) {
  json belief = json::object();
  for (const auto& [state, p] : step.belief) belief[std::to_string(state)] = p;
  const auto& pl = step.observation.placement;
  return json{
      {"t", step.t},
      {"true_state", step.true_state},
      {"window", pl.shape.to_string()},
      {"placement", {{"top", pl.top}, {"left", pl.left}}},
      {"contents", cells_to_string(step.observation.contents)},
      {"belief_support_size", step.belief_support_size()},
      {"belief", belief},
      {"mixture_values", step.mixture_values},
      {"a_mix", action_set_to_json(step.a_mix)},
      {"a_max", action_set_to_json(step.a_max)},
      {"iou", step.iou},
      {"margin", step.margin},
      {"chosen_action", step.chosen_action.cell()},
      {"reward", step.reward},
  };
}

StepRecord step_from_json(const json& j) {
  StepRecord step;
  step.t = j.at("t").get<int>();
  step.true_state = j.at("true_state").get<StateIndex>();
  const auto shape = WindowShape::parse(j.at("window").get<std::string>());
  step.observation.placement = WindowPlacement{j.at("placement").at("top").get<int>(),
                                               j.at("placement").at("left").get<int>(), shape};
  step.observation.contents = cells_from_string(j.at("contents").get<std::string>());
  if (static_cast<int>(step.observation.contents.size()) != shape.area()) {
    throw std::invalid_argument("trace observation size does not match its window");
  }
  Belief::Masses masses;
  for (const auto& [key, p] : j.at("belief").items()) {
    masses[static_cast<StateIndex>(std::stoul(key))] = p.get<double>();
  }
  step.belief = Belief::from_probabilities(masses);
  if (j.at("belief_support_size").get<std::size_t>() != step.belief.size()) {
    throw std::invalid_argument("trace belief_support_size disagrees with belief");
  }
  step.mixture_values = j.at("mixture_values").get<ActionValues>();
  step.a_mix = action_set_from_json(j.at("a_mix"));
  step.a_max = action_set_from_json(j.at("a_max"));
  step.iou = j.at("iou").get<double>();
  step.margin = j.at("margin").get<double>();
  step.chosen_action = Action(j.at("chosen_action").get<int>());
  step.reward = j.at("reward").get<double>();
  return step;
}

void write_trace(std::ostream& out, std::span<const EpisodeResult> episodes) {
  for (std::size_t i = 0; i < episodes.size(); ++i) {
    for (const auto& step : episodes[i].steps) {
      json j = step_to_json(step);
      j["episode"] = i;
      out << j.dump() << '\n';
    }
  }
}

std::vector<StepRecord> read_trace(std::istream& in) {
  std::vector<StepRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(step_from_json(json::parse(line)));
  }
  return out;
}

std::string returns_svg(std::span<const SweepRow> rows) {
  // Preserve first-seen order of windows and policies.
  std::vector<std::string> windows;
  std::vector<std::string> policies;
  std::map<std::pair<std::string, std::string>, const SweepRow*> cell;
  for (const auto& r : rows) {
    const auto w = r.shape.to_string();
    if (std::find(windows.begin(), windows.end(), w) == windows.end()) windows.push_back(w);
    if (std::find(policies.begin(), policies.end(), r.policy) == policies.end()) {
      policies.push_back(r.policy);
    }
    cell[{w, r.policy}] = &r;
  }

  constexpr double kWidth = 640, kHeight = 400;
  constexpr double kLeft = 60, kRight = 150, kTop = 30, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto y_of = [&](double v) { return kTop + (1.0 - v) / 2.0 * plot_h; };
  static constexpr std::array<const char*, 4> kColors{"#4c72b0", "#dd8452", "#55a868", "#c44e52"};

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"12\">\n",
      kWidth, kHeight);
  svg += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n",
                     kWidth, kHeight);
  for (int i = -4; i <= 4; ++i) {
    const double v = i / 4.0;
    svg += fmt::format(
        "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\"/>\n", kLeft,
        y_of(v), kLeft + plot_w, y_of(v), i == 0 ? "#000000" : "#dddddd");
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{:.2f}</text>\n",
                       kLeft - 6, y_of(v) + 4, v);
  }
  svg += fmt::format(
      "<text x=\"16\" y=\"{:.2f}\" transform=\"rotate(-90 16 {:.2f})\" "
      "text-anchor=\"middle\">average return</text>\n",
      kTop + plot_h / 2, kTop + plot_h / 2);

  const double group_w = windows.empty() ? plot_w : plot_w / static_cast<double>(windows.size());
  const double bar_w = policies.empty() ? 0 : group_w * 0.7 / static_cast<double>(policies.size());
  for (std::size_t g = 0; g < windows.size(); ++g) {
    const double gx = kLeft + g * group_w + group_w * 0.15;
    for (std::size_t p = 0; p < policies.size(); ++p) {
      const auto it = cell.find({windows[g], policies[p]});
      if (it == cell.end()) continue;
      const SweepRow& r = *it->second;
      const double x = gx + p * bar_w;
      const double y0 = y_of(0.0);
      const double y1 = y_of(r.mean_return);
      svg += fmt::format(
          "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\"/>\n", x,
          std::min(y0, y1), bar_w, std::abs(y1 - y0), kColors[p % kColors.size()]);
      const double cx = x + bar_w / 2;
      const double hi = y_of(std::min(1.0, r.mean_return + r.ci95));
      const double lo = y_of(std::max(-1.0, r.mean_return - r.ci95));
      svg += fmt::format(
          "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"black\"/>\n",
          cx, hi, lo);
      for (double ye : {hi, lo}) {
        svg += fmt::format(
            "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"black\"/>\n",
            cx - bar_w / 4, ye, cx + bar_w / 4, ye);
      }
    }
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n",
                       kLeft + g * group_w + group_w / 2, kTop + plot_h + 20, windows[g]);
  }
  svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">sense window</text>\n",
                     kLeft + plot_w / 2, kHeight - 8);
  for (std::size_t p = 0; p < policies.size(); ++p) {
    const double ly = kTop + 10 + p * 20;
    svg += fmt::format(
        "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"12\" height=\"12\" fill=\"{}\"/>\n",
        kWidth - kRight + 15, ly - 10, kColors[p % kColors.size()]);
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n", kWidth - kRight + 32, ly,
                       policies[p]);
  }
  svg += "</svg>\n";
  return svg;
}

std::string file_sha256(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 initialisation failed");
  }
  std::array<char, 1 << 16> buf;
  while (in.read(buf.data(), buf.size()) || in.gcount() > 0) {
    EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md;
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace rbt::cli
