#include "rbt/solver.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "rbt/errors.hpp"

namespace rbt {
namespace {

using nlohmann::json;

class ExpectimaxSolver {
 public:
  explicit ExpectimaxSolver(const OpponentModel& opponent)
      : opponent_(opponent),
        rows_(kNumEncodings),
        done_(kNumEncodings, false) {}

  // Row for an X-to-move, non-terminal board.
  const QRow& row(const BoardState& board) {
    const StateIndex idx = encode_state(board);
    if (done_[idx]) return rows_[idx];
    QRow q;
    q.fill(-1.0);
    for (Action a : valid_actions(board).to_vector()) {
      q[a.cell()] = after_agent_move(apply_action(board, a, Cell::X));
    }
    rows_[idx] = q;
    done_[idx] = true;
    return rows_[idx];
  }

 private:
  double after_agent_move(const BoardState& board) {
    switch (status(board)) {
      case GameStatus::XWins:
        return 1.0;
      case GameStatus::Draw:
        return 0.0;
      case GameStatus::OWins:
        throw InvalidState("X move produced an O win");
      case GameStatus::InProgress:
        break;
    }
    const ActionDistribution dist = opponent_.distribution(board);
    double expected = 0.0;
    for (int c = 0; c < kNumActions; ++c) {
      if (dist[c] == 0.0) continue;
      const BoardState next = apply_action(board, Action(c), Cell::O);
      double outcome = 0.0;
      switch (status(next)) {
        case GameStatus::OWins:
          outcome = -1.0;
          break;
        case GameStatus::Draw:
          outcome = 0.0;
          break;
        case GameStatus::XWins:
          throw InvalidState("O move produced an X win");
        case GameStatus::InProgress: {
          const QRow& q = row(next);
          outcome = *std::max_element(q.begin(), q.end());
          break;
        }
      }
      expected += dist[c] * outcome;
    }
    return expected;
  }

  const OpponentModel& opponent_;
  std::vector<QRow> rows_;
  std::vector<bool> done_;
};

json opponent_to_json(const OpponentModel& m) {
  switch (m.kind()) {
    case OpponentModel::Kind::UniformRandom:
      return "uniform";
    case OpponentModel::Kind::Minimax:
      return "minimax";
    case OpponentModel::Kind::EpsilonMinimax:
      return json{{"eps_minimax", m.epsilon()}};
  }
  return nullptr;
}

OpponentModel opponent_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "uniform") return OpponentModel::uniform();
    if (s == "minimax") return OpponentModel::minimax();
  } else if (j.is_object() && j.size() == 1 && j.contains("eps_minimax") &&
             j["eps_minimax"].is_number()) {
    const double eps = j["eps_minimax"].get<double>();
    if (eps >= 0.0 && eps <= 1.0) return OpponentModel::eps_minimax(eps);
  }
  throw CorruptEntry("unrecognised opponent field: " + j.dump());
}

}  // namespace

QTable::QTable(OpponentModel opponent)
    : opponent_(opponent), rows_(kNumEncodings), present_(kNumEncodings, false) {}

bool QTable::contains(StateIndex state) const noexcept {
  return state < kNumEncodings && present_[state];
}

const QRow& QTable::row(StateIndex state) const {
  if (!contains(state)) throw MissingQEntry(state);
  return rows_[state];
}

void QTable::set(StateIndex state, const QRow& row) {
  if (state >= kNumEncodings) {
    throw InvalidState(fmt::format("state index {} out of range", state));
  }
  if (!present_[state]) {
    present_[state] = true;
    ++count_;
  }
  rows_[state] = row;
}

double QTable::value(StateIndex state) const {
  const QRow& q = row(state);
  return *std::max_element(q.begin(), q.end());
}

std::vector<StateIndex> QTable::states() const {
  std::vector<StateIndex> out;
  out.reserve(count_);
  for (StateIndex s = 0; s < kNumEncodings; ++s) {
    if (present_[s]) out.push_back(s);
  }
  return out;
}

QTable solve_q(const OpponentModel& opponent) {
  ExpectimaxSolver solver(opponent);
  QTable table(opponent);
  for (StateIndex idx : enumerate_reachable_states()) {
    const BoardState board = decode_state(idx);
    if (board.to_move() != Cell::X || is_terminal(board)) continue;
    table.set(idx, solver.row(board));
  }
  return table;
}

std::string serialize_qtable(const QTable& q) {
  // Values are written with 17 significant digits, enough to round-trip any
  // double exactly.
  std::string out;
  out += R"({"version":)" + std::to_string(kQTableFormatVersion);
  out += R"(,"opponent":)" + opponent_to_json(q.opponent()).dump();
  out += R"(,"gamma":1.0,"entries":{)";
  bool first = true;
  for (StateIndex s : q.states()) {
    if (!first) out += ',';
    first = false;
    out += fmt::format("\"{}\":[", s);
    const QRow& row = q.row(s);
    for (int a = 0; a < kNumActions; ++a) {
      if (a) out += ',';
      out += fmt::format("{:.17g}", row[a]);
    }
    out += ']';
  }
  out += "}}\n";
  return out;
}

QTable parse_qtable(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw CorruptEntry(std::string("Q-table is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw CorruptEntry("Q-table root must be an object");
  if (!doc.contains("version") || !doc["version"].is_number_integer()) {
    throw CorruptEntry("Q-table is missing an integer 'version'");
  }
  if (const int version = doc["version"].get<int>(); version != kQTableFormatVersion) {
    throw FormatVersionMismatch(fmt::format(
        "Q-table format version {} is not supported (expected {})", version,
        kQTableFormatVersion));
  }
  if (!doc.contains("gamma") || !doc["gamma"].is_number() ||
      doc["gamma"].get<double>() != 1.0) {
    throw CorruptEntry("Q-table 'gamma' must be 1.0");
  }
  if (!doc.contains("opponent")) throw CorruptEntry("Q-table is missing 'opponent'");
  QTable table(opponent_from_json(doc["opponent"]));

  if (!doc.contains("entries") || !doc["entries"].is_object()) {
    throw CorruptEntry("Q-table is missing the 'entries' object");
  }
  for (const auto& [key, values] : doc["entries"].items()) {
    StateIndex state = 0;
    std::size_t used = 0;
    try {
      const unsigned long parsed = std::stoul(key, &used);
      if (used != key.size() || parsed >= kNumEncodings) used = 0;
      state = static_cast<StateIndex>(parsed);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0) throw CorruptEntry("bad state key '" + key + "'");
    if (!values.is_array() || values.size() != kNumActions) {
      throw CorruptEntry(fmt::format("entry {} must hold {} values", key, kNumActions));
    }
    QRow row;
    for (int a = 0; a < kNumActions; ++a) {
      if (!values[a].is_number()) {
        throw CorruptEntry(fmt::format("entry {} action {} is not a number", key, a));
      }
      row[a] = values[a].get<double>();
      if (!(row[a] >= -1.0 && row[a] <= 1.0)) {
        throw CorruptEntry(fmt::format("entry {} action {} value {} outside [-1, 1]",
                                       key, a, row[a]));
      }
    }
    table.set(state, row);
  }
  return table;
}

void save_qtable(const QTable& q, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << serialize_qtable(q);
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

QTable load_qtable(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open Q-table " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_qtable(buf.str());
}

}  // namespace rbt
