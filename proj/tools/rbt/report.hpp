#pragma once

// File formats emitted by the benchmark CLI: sweep CSVs, JSONL step traces,
// the returns bar chart and the run manifest.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rbt/env.hpp"
#include "rbt/metrics.hpp"

namespace rbt::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReturnsHeader = "window,policy,episodes,mean_return,ci95";
inline constexpr const char* kTimestepHeader = "window,policy_pair,t,mean_iou,mean_margin,samples";

// One CSV data line (no newline), decimals to 6 significant digits.
std::string format_returns_row(const SweepRow& row);
std::string format_timestep_row(WindowShape shape, const std::string& policy_pair,
                                const TimestepAggregate& agg);

// Appends a row, writing the header first when the file is new or empty.
void append_returns_row(const std::filesystem::path& path, const SweepRow& row);

nlohmann::json step_to_json(const StepRecord& step);
StepRecord step_from_json(const nlohmann::json& j);

// One JSON object per line; each line also carries the episode index.
void write_trace(std::ostream& out, std::span<const EpisodeResult> episodes);
std::vector<StepRecord> read_trace(std::istream& in);

// Grouped bar chart (one group per window, one bar per policy) with 95% CI
// error bars.
std::string returns_svg(std::span<const SweepRow> rows);

// Hex SHA-256 of a file's bytes.
std::string file_sha256(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace rbt::cli
