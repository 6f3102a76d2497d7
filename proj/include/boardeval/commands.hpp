#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "boardeval/batch.hpp"
#include "boardeval/config.hpp"

namespace boardeval {

// Output layout of a run directory:
//   manifest.json            gen: config snapshot, hash, one entry per sample
//   images/<id>.png          gen
//   prompts/<task>/<game>.txt, prompts/qa/<id>.txt
//   results.jsonl            run: one record per sample, manifest order
//   metrics.json             run: per game x task means and the overall scores
//   sessions/<id>.json       play: one log per session
//   play_metrics.json        play
//   report.json, report.txt  report

struct GenSummary {
  std::string dir;
  size_t samples = 0;
};

/// Throws Error{Io} when the directory cannot be written.
GenSummary cmd_gen(const RunConfig& c, const std::string& out_dir);

/// Sample rebuilt from a manifest entry; the PNG is read from disk.
Sample load_sample(const nlohmann::json& entry, const std::string& dataset_dir);

struct RunSummary {
  size_t evaluated = 0;  // this invocation
  size_t skipped = 0;    // already present when resuming
  nlohmann::json metrics;
};

RunSummary cmd_run(const RunConfig& c, const std::string& dataset_dir, const std::string& out_dir, bool resume,
                   int parallelism);

nlohmann::json session_to_json(const E2ESessionLog& log, const std::string& id);

nlohmann::json cmd_play(const RunConfig& c, const std::string& out_dir, int parallelism);

/// Ratings tables from both data paths; also written to out_dir when given.
std::string cmd_rate(const std::string& out_dir = "");

/// Combines the metrics of one or more run directories. Throws Error{Io}
/// when an input has neither metrics.json nor play_metrics.json.
nlohmann::json cmd_report(const std::vector<std::string>& inputs, const std::string& out_dir);
std::string report_text(const nlohmann::json& report);

/// Drops timing fields so two runs can be compared byte for byte.
nlohmann::json strip_volatile(nlohmann::json j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

}  // namespace boardeval
