#include "boardeval/batch.hpp"

#include <chrono>
#include <exception>
#include <mutex>
#include <optional>

#include <omp.h>

namespace boardeval {

namespace {

Sample build(GameKind kind, TaskKind task, Seed run_seed, std::uint64_t index, const GenProfile& profile,
             const Theme& theme, bool render) {
  return make_sample(kind, task, run_seed, index, profile, theme, render);
}

/// Runs body(i) for i in [0, n) and rethrows the first exception afterwards.
template <typename Body>
void for_each_index(std::int64_t n, const BatchOptions& opts, Body body) {
  if (opts.policy == ExecPolicy::Serial) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex mu;
  const int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard lock(mu);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<Sample> generate_samples(GameKind kind, TaskKind task, Seed run_seed, std::uint64_t first,
                                     std::uint64_t count, const GenProfile& profile, const Theme& theme,
                                     const BatchOptions& opts) {
  std::vector<std::optional<Sample>> slots(count);
  for_each_index(static_cast<std::int64_t>(count), opts, [&](std::int64_t i) {
    slots[static_cast<size_t>(i)] =
        build(kind, task, run_seed, first + static_cast<std::uint64_t>(i), profile, theme, opts.render);
  });
  std::vector<Sample> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

OfflineResult evaluate_sample(const Sample& s, ModelAdapter& agent) {
  OfflineResult r;
  r.id = s.id;
  r.kind = s.kind;
  r.task = s.task;
  QueryContext ctx;
  ctx.kind = s.kind;
  ctx.task = s.task;
  ctx.key = s.id;
  std::optional<GameState> state;
  std::optional<BoardMatrix> truth;
  if (s.task == TaskKind::Perceiving) {
    truth = s.matrix();
    ctx.truth_matrix = &*truth;
  } else if (const auto* q = std::get_if<QATruth>(&s.ground_truth)) {
    ctx.qa = &q->item;
  } else if (s.task == TaskKind::RuleFollowing) {
    state = std::holds_alternative<GameState>(s.ground_truth) ? std::get<GameState>(s.ground_truth) : rule_state(s);
    ctx.state = &*state;
  }
  r.started_unix_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::system_clock::now().time_since_epoch())
                          .count();
  const auto start = std::chrono::steady_clock::now();
  try {
    r.raw = agent.send(s.prompt, s.image, ctx);
  } catch (const Error& e) {
    r.transport_failed = true;
    r.error = std::string(error_code_name(e.code())) + ": " + e.what();
    return r;
  }
  r.latency_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  ParsedResponse p;
  switch (s.task) {
    case TaskKind::Perceiving:
      p = parse_matrix(r.raw, s.kind);
      r.score = score_perceiving(p, *truth);
      break;
    case TaskKind::QA:
      p = parse_answer(r.raw);
      r.score = score_qa(p, std::get<QATruth>(s.ground_truth).item);
      break;
    case TaskKind::RuleFollowing:
      p = parse_move(r.raw, s.kind);
      r.score = validate_rule_move(p, *state) ? 1.0 : 0.0;
      if (p.ok() && r.score == 0) p.error = "illegal move";
      break;
    case TaskKind::E2E: throw Error(ErrorCode::InvalidArgument, "e2e samples are played, not evaluated");
  }
  r.status = p.status;
  r.error = p.error;
  return r;
}

std::vector<OfflineResult> evaluate_samples(std::span<const Sample> samples, ModelAdapter& agent,
                                            const BatchOptions& opts) {
  std::vector<OfflineResult> out(samples.size());
  for_each_index(static_cast<std::int64_t>(samples.size()), opts,
                 [&](std::int64_t i) { out[static_cast<size_t>(i)] = evaluate_sample(samples[static_cast<size_t>(i)], agent); });
  return out;
}

double mean_score(std::span<const OfflineResult> results) {
  double sum = 0;
  int n = 0;
  for (const auto& r : results) {
    if (r.transport_failed) continue;
    sum += r.score;
    ++n;
  }
  return n ? sum / n : 0.0;
}

}  // namespace boardeval
