#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "boardeval/client.hpp"
#include "boardeval/parse_eval.hpp"
#include "boardeval/tasks.hpp"

namespace boardeval {

/// Serial loops are the reference; the OpenMP versions must produce the
/// same values in the same order.
enum class ExecPolicy { Serial, Parallel };

struct BatchOptions {
  ExecPolicy policy = ExecPolicy::Parallel;
  int threads = 0;  // 0 = OpenMP default
  bool render = true;  // false skips the PNG; prompts and ground truth are unaffected
};

/// Samples first .. first+count-1 of (kind, task) under `run_seed`.
std::vector<Sample> generate_samples(GameKind kind, TaskKind task, Seed run_seed, std::uint64_t first,
                                     std::uint64_t count, const GenProfile& profile, const Theme& theme,
                                     const BatchOptions& opts = {});

struct OfflineResult {
  std::string id;
  GameKind kind = GameKind::TicTacToe;
  TaskKind task = TaskKind::Perceiving;
  std::string raw;
  ParseStatus status = ParseStatus::InvalidFormat;
  std::string error;
  double score = 0;
  double latency_ms = 0;
  std::int64_t started_unix_ms = 0;
  bool transport_failed = false;  // adapter gave up; not a model answer
};

/// Queries the adapter once and scores the reply against the sample.
OfflineResult evaluate_sample(const Sample& s, ModelAdapter& agent);

/// The adapter must tolerate concurrent send() calls under Parallel.
std::vector<OfflineResult> evaluate_samples(std::span<const Sample> samples, ModelAdapter& agent,
                                            const BatchOptions& opts = {});

/// Mean score of the records that reached the model.
double mean_score(std::span<const OfflineResult> results);

}  // namespace boardeval
