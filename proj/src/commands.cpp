#include "boardeval/commands.hpp"

#include <omp.h>

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "boardeval/hash.hpp"
#include "boardeval/prompts.hpp"
#include "boardeval/ratings.hpp"

namespace boardeval {

namespace fs = std::filesystem;
using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::error_code ec;
  fs::create_directories(fs::path(path).parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::Io, "write failed: " + path);
}

namespace {

void make_dir(const fs::path& p) {
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec || !fs::is_directory(p)) throw Error(ErrorCode::Io, "cannot create directory " + p.string());
}

std::string iso_time(std::int64_t unix_ms) {
  const std::time_t t = static_cast<std::time_t>(unix_ms / 1000);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[40];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[48];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(unix_ms % 1000));
  return out;
}

json matrix_json(const BoardMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) rows.push_back(std::vector<int>(m.row(r).begin(), m.row(r).end()));
  return rows;
}

BoardMatrix matrix_from_json(GameKind kind, const json& rows) {
  std::vector<int> cells;
  for (const auto& row : rows) {
    for (const auto& v : row) cells.push_back(v.get<int>());
  }
  return BoardMatrix(kind, std::move(cells));
}

json truth_json(const Sample& s) {
  if (const auto* q = std::get_if<QATruth>(&s.ground_truth)) {
    json options = json::array();
    for (const auto& o : q->item.options) options.push_back({{"letter", std::string(1, o.letter)}, {"text", o.text}});
    return {{"matrix", matrix_json(q->matrix)},
            {"family", q->item.family},
            {"question", q->item.question},
            {"params", q->item.params},
            {"options", options},
            {"correct", std::string(1, q->item.correct)}};
  }
  if (const auto* st = std::get_if<GameState>(&s.ground_truth)) {
    std::vector<std::string> moves;
    for (const auto& m : st->move_log()) moves.push_back(move_to_text(m));
    return {{"matrix", matrix_json(encode_board(*st))},
            {"side_to_move", st->side_to_move() == Side::First ? "first" : "second"},
            {"moves", moves}};
  }
  return {{"matrix", matrix_json(s.matrix())}};
}

std::string prompt_path(const Sample& s) {
  if (s.task == TaskKind::QA) return "prompts/qa/" + s.id + ".txt";
  return "prompts/" + std::string(task_id(s.task)) + "/" + std::string(game_id(s.kind)) + ".txt";
}

std::vector<TaskKind> offline_tasks(const RunConfig& c) {
  std::vector<TaskKind> out;
  for (TaskKind t : c.tasks) {
    if (t != TaskKind::E2E) out.push_back(t);
  }
  return out;
}

const char* status_text(const OfflineResult& r) {
  if (r.transport_failed) return "transport_error";
  return r.status == ParseStatus::Ok ? "ok" : "invalid_format";
}

json record_json(const OfflineResult& r) {
  return {{"id", r.id},
          {"game", std::string(game_id(r.kind))},
          {"task", std::string(task_id(r.task))},
          {"raw", r.raw},
          {"status", status_text(r)},
          {"error", r.error},
          {"score", r.score},
          {"latency_ms", r.latency_ms},
          {"started_at", iso_time(r.started_unix_ms)},
          {"finished_at", iso_time(r.started_unix_ms + static_cast<std::int64_t>(r.latency_ms))}};
}

/// Reads complete records; a torn final line from an interrupted run is dropped.
std::vector<json> read_records(const fs::path& path, bool& torn) {
  std::vector<json> out;
  torn = false;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("id")) {
      torn = true;
      break;
    }
    out.push_back(std::move(j));
  }
  return out;
}

json overall_or_null(TaskKind task, const std::map<GameKind, double>& per_game) {
  if (per_game.empty()) return nullptr;
  return aggregate_overall(task, per_game, printed_star_table(), {});
}

json offline_metrics(const std::vector<json>& records) {
  struct Acc {
    int n = 0, invalid = 0, transport = 0;
    double sum = 0;
  };
  std::map<TaskKind, std::map<GameKind, Acc>> acc;
  for (const auto& r : records) {
    Acc& a = acc[parse_task_id(r.at("task").get<std::string>())][parse_game_id(r.at("game").get<std::string>())];
    const auto status = r.at("status").get<std::string>();
    if (status == "transport_error") {
      ++a.transport;
      continue;
    }
    ++a.n;
    a.invalid += status == "invalid_format";
    a.sum += r.at("score").get<double>();
  }
  json tasks = json::object();
  for (const auto& [task, games] : acc) {
    json per_game = json::object();
    std::map<GameKind, double> means;
    for (const auto& [g, a] : games) {
      const double mean = a.n ? a.sum / a.n : 0.0;
      per_game[std::string(game_id(g))] = {
          {"n", a.n}, {"mean", mean}, {"invalid_format", a.invalid}, {"transport_failures", a.transport}};
      if (a.n) means[g] = mean;
    }
    tasks[std::string(task_id(task))] = {{"per_game", per_game}, {"overall", overall_or_null(task, means)}};
  }
  return tasks;
}

}  // namespace

// ---------------------------------------------------------------------------

GenSummary cmd_gen(const RunConfig& c, const std::string& out_dir) {
  const fs::path root(out_dir);
  make_dir(root / "images");
  json entries = json::array();
  constexpr std::uint64_t kChunk = 256;
  for (GameKind g : c.games) {
    for (TaskKind t : offline_tasks(c)) {
      write_file((root / "prompts" / task_id(t) / (std::string(game_id(g)) + ".txt")).string(),
                 std::string(task_prompt(g, t)));
      const GenProfile& profile = c.profile(g, t);
      const auto total = static_cast<std::uint64_t>(c.samples_per_task);
      for (std::uint64_t first = 0; first < total; first += kChunk) {
        const auto samples = generate_samples(g, t, c.seed, first, std::min(kChunk, total - first), profile, c.theme);
        for (const Sample& s : samples) {
          const std::string image = "images/" + s.id + ".png";
          write_file((root / image).string(), std::string(s.image.begin(), s.image.end()));
          const std::string prompt = prompt_path(s);
          if (s.task == TaskKind::QA) write_file((root / prompt).string(), s.prompt);
          entries.push_back({{"id", s.id},
                             {"game", std::string(game_id(s.kind))},
                             {"task", std::string(task_id(s.task))},
                             {"seed", s.seed.value},
                             {"image", image},
                             {"image_sha256", sha256_hex(s.image)},
                             {"prompt", prompt},
                             {"prompt_sha256", sha256_hex(s.prompt)},
                             {"profile", profile_to_json(s.profile)},
                             {"ground_truth", truth_json(s)}});
        }
      }
    }
  }
  const json manifest = {{"config", config_to_json(c)}, {"config_hash", config_hash(c)}, {"samples", entries}};
  write_file((root / "manifest.json").string(), manifest.dump(1) + "\n");
  return {out_dir, entries.size()};
}

Sample load_sample(const json& e, const std::string& dataset_dir) {
  Sample s;
  s.id = e.at("id").get<std::string>();
  s.kind = parse_game_id(e.at("game").get<std::string>());
  s.task = parse_task_id(e.at("task").get<std::string>());
  s.seed = Seed{e.at("seed").get<std::uint64_t>()};
  s.profile = profile_from_json(e.at("profile"), task_profile(s.kind, s.task));
  s.profile.kind = s.kind;
  const fs::path root(dataset_dir);
  const std::string png = read_file((root / e.at("image").get<std::string>()).string());
  s.image.assign(png.begin(), png.end());
  s.prompt = read_file((root / e.at("prompt").get<std::string>()).string());
  const json& gt = e.at("ground_truth");
  const BoardMatrix m = matrix_from_json(s.kind, gt.at("matrix"));
  switch (s.task) {
    case TaskKind::Perceiving: s.ground_truth = m; break;
    case TaskKind::QA: {
      QAItem item;
      item.family = gt.at("family").get<std::string>();
      item.question = gt.at("question").get<std::string>();
      item.params = gt.at("params").get<std::map<std::string, int>>();
      for (const auto& o : gt.at("options")) item.options.push_back({o.at("letter").get<std::string>()[0], o.at("text")});
      item.correct = gt.at("correct").get<std::string>()[0];
      s.ground_truth = QATruth{std::move(item), m};
      break;
    }
    case TaskKind::RuleFollowing: {
      GameState st = rule_state(s);
      if (encode_board(st) != m) throw Error(ErrorCode::Io, "manifest entry " + s.id + " does not match its seed");
      s.ground_truth = std::move(st);
      break;
    }
    case TaskKind::E2E: throw Error(ErrorCode::InvalidArgument, "manifest holds an e2e entry");
  }
  return s;
}

RunSummary cmd_run(const RunConfig& c, const std::string& dataset_dir, const std::string& out_dir, bool resume,
                   int parallelism) {
  const json manifest = json::parse(read_file((fs::path(dataset_dir) / "manifest.json").string()), nullptr, false);
  if (manifest.is_discarded()) throw Error(ErrorCode::Io, "manifest.json is not JSON");
  make_dir(out_dir);
  const fs::path results = fs::path(out_dir) / "results.jsonl";

  std::set<std::string> done;
  if (resume && fs::exists(results)) {
    bool torn = false;
    const auto records = read_records(results, torn);
    for (const auto& r : records) done.insert(r.at("id").get<std::string>());
    if (torn) {
      std::string clean;
      for (const auto& r : records) clean += r.dump() + "\n";
      write_file(results.string(), clean);
    }
  } else {
    write_file(results.string(), "");
  }

  std::vector<const json*> pending;
  RunSummary summary;
  for (const auto& e : manifest.at("samples")) {
    if (done.count(e.at("id").get<std::string>())) {
      ++summary.skipped;
    } else {
      pending.push_back(&e);
    }
  }

  auto agent = make_agent(c);
  BatchOptions opts;
  opts.threads = std::max(1, parallelism);
  const size_t chunk = static_cast<size_t>(opts.threads) * 16;
  std::ofstream out(results, std::ios::app);
  if (!out) throw Error(ErrorCode::Io, "cannot append to " + results.string());
  for (size_t first = 0; first < pending.size(); first += chunk) {
    std::vector<Sample> samples;
    for (size_t i = first; i < std::min(pending.size(), first + chunk); ++i) {
      samples.push_back(load_sample(*pending[i], dataset_dir));
    }
    // one writer: records go out in manifest order once the chunk is scored
    for (const auto& r : evaluate_samples(samples, *agent, opts)) out << record_json(r).dump() << "\n";
    out.flush();
    summary.evaluated += samples.size();
  }
  out.close();

  bool torn = false;
  const auto records = read_records(results, torn);
  summary.metrics = {{"config_hash", config_hash(c)},
                     {"dataset_config_hash", manifest.value("config_hash", "")},
                     {"agent", agent->name()},
                     {"records", records.size()},
                     {"tasks", offline_metrics(records)}};
  write_file((fs::path(out_dir) / "metrics.json").string(), summary.metrics.dump(1) + "\n");
  return summary;
}

// ---------------------------------------------------------------------------

json session_to_json(const E2ESessionLog& log, const std::string& id) {
  json turns = json::array();
  for (const auto& t : log.transcript) {
    turns.push_back({{"turn", t.turn},
                     {"image_sha256", t.image_sha256},
                     {"prompt_sha256", sha256_hex(t.prompt)},
                     {"notice", t.prompt.size() != task_prompt(log.kind, TaskKind::E2E).size()},
                     {"raw", t.raw},
                     {"move", t.move ? json(*t.move) : json(nullptr)},
                     {"error", t.error},
                     {"valid", t.valid},
                     {"opponent_reply", t.opponent_reply ? json(*t.opponent_reply) : json(nullptr)},
                     {"latency_ms", t.latency_ms}});
  }
  json j = {{"id", id},
            {"game", std::string(game_id(log.kind))},
            {"seed", log.seed.value},
            {"invalid_count", log.invalid_count},
            {"model_moves", log.model_moves},
            {"outcome", outcome_to_text(log.outcome)},
            {"struck_out", log.struck_out},
            {"aborted", log.aborted},
            {"abort_reason", log.abort_reason},
            {"score", log.score ? json(*log.score) : json(nullptr)},
            {"warnings", log.warnings},
            {"transcript", turns}};
  if (log.final_state) j["final_matrix"] = matrix_json(encode_board(*log.final_state));
  return j;
}

namespace {

int sudoku_clues_of(const E2ESessionLog& log) {
  if (log.kind != GameKind::Sudoku || !log.final_state) return kDefaultSudokuClues;
  return static_cast<int>(log.final_state->as<SudokuData>().clues.count());
}

}  // namespace

json cmd_play(const RunConfig& c, const std::string& out_dir, int parallelism) {
  make_dir(fs::path(out_dir) / "sessions");
  auto agent = make_agent(c);
  const OpponentConfig opp = resolved_opponent(c);
  std::vector<std::pair<GameKind, std::uint64_t>> jobs;
  for (GameKind g : c.games) {
    for (int i = 0; i < c.e2e_games; ++i) jobs.emplace_back(g, static_cast<std::uint64_t>(i));
  }
  std::vector<E2ESessionLog> logs(jobs.size());
  BatchOptions opts;
  opts.threads = std::max(1, parallelism);
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) num_threads(opts.threads)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(jobs.size()); ++k) {
    const auto [g, i] = jobs[static_cast<size_t>(k)];
    try {
      SessionOptions so;
      so.opponent = opp;
      so.theme = c.theme;
      so.key_prefix = sample_id(g, TaskKind::E2E, i);
      logs[static_cast<size_t>(k)] =
          run_e2e_session(g, derive_seed(c.seed, std::string(game_id(g)) + "/e2e", i), *agent, so);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  struct Acc {
    int sessions = 0, completed = 0, aborted = 0, wins = 0, ties = 0, losses = 0, strikeouts = 0;
    double raw = 0, normalized = 0;
  };
  std::map<GameKind, Acc> acc;
  for (size_t k = 0; k < jobs.size(); ++k) {
    const auto& log = logs[k];
    const std::string id = sample_id(jobs[k].first, TaskKind::E2E, jobs[k].second);
    json j = session_to_json(log, id);
    Acc& a = acc[log.kind];
    ++a.sessions;
    if (log.aborted) {
      ++a.aborted;
    } else {
      ++a.completed;
      const double norm = normalize_e2e(log.kind, *log.score, sudoku_clues_of(log));
      j["normalized"] = norm;
      a.raw += *log.score;
      a.normalized += norm;
      a.strikeouts += log.struck_out;
      if (log.outcome.status == Outcome::Status::Tie) {
        ++a.ties;
      } else if ((log.outcome.status == Outcome::Status::Win) == (log.outcome.side == Side::First)) {
        ++a.wins;
      } else {
        ++a.losses;
      }
    }
    write_file((fs::path(out_dir) / "sessions" / (id + ".json")).string(), j.dump(1) + "\n");
  }
  json per_game = json::object();
  std::map<GameKind, double> means;
  for (const auto& [g, a] : acc) {
    const double raw = a.completed ? a.raw / a.completed : 0.0;
    const double norm = a.completed ? a.normalized / a.completed : 0.0;
    per_game[std::string(game_id(g))] = {{"sessions", a.sessions}, {"completed", a.completed},
                                         {"aborted", a.aborted},   {"wins", a.wins},
                                         {"ties", a.ties},         {"losses", a.losses},
                                         {"strikeouts", a.strikeouts}, {"mean_raw", raw},
                                         {"mean_normalized", norm}};
    if (a.completed) means[g] = norm;
  }
  const json metrics = {{"config_hash", config_hash(c)},
                        {"agent", agent->name()},
                        {"per_game", per_game},
                        {"overall", overall_or_null(TaskKind::E2E, means)}};
  write_file((fs::path(out_dir) / "play_metrics.json").string(), metrics.dump(1) + "\n");
  return metrics;
}

// ---------------------------------------------------------------------------

std::string cmd_rate(const std::string& out_dir) {
  const std::string text = ratings_report();
  if (!out_dir.empty()) {
    const auto& c = rating_constants();
    auto columns = [](const AbilityColumns& cols) {
      json j = json::object();
      for (const auto& [g, row] : cols) {
        json r = json::object();
        for (Ability a : kAllAbilities) {
          const auto& v = row[static_cast<size_t>(a)];
          r[std::string(ability_name(a))] = v ? json(*v) : json(nullptr);
        }
        j[std::string(game_id(g))] = r;
      }
      return j;
    };
    const auto formula = build_table(formula_raw(c));
    const auto printed = build_table(printed_path_raw(c));
    const json j = {
        {"formula", {{"raw", columns(formula.raw)}, {"normalized", columns(formula.normalized)}, {"stars", columns(formula.stars)}}},
        {"printed", {{"raw", columns(printed.raw)}, {"normalized", columns(printed.normalized)}, {"stars", columns(printed.stars)}}},
    };
    write_file((fs::path(out_dir) / "ratings.txt").string(), text);
    write_file((fs::path(out_dir) / "ratings.json").string(), j.dump(1) + "\n");
  }
  return text;
}

json cmd_report(const std::vector<std::string>& inputs, const std::string& out_dir) {
  if (inputs.empty()) throw Error(ErrorCode::InvalidArgument, "report needs at least one run directory");
  json sources = json::array();
  std::map<TaskKind, std::map<GameKind, double>> offline;
  std::map<GameKind, json> e2e;
  for (const auto& dir : inputs) {
    const fs::path m = fs::path(dir) / "metrics.json";
    const fs::path p = fs::path(dir) / "play_metrics.json";
    if (!fs::exists(m) && !fs::exists(p)) throw Error(ErrorCode::Io, dir + " has no metrics.json or play_metrics.json");
    json src = {{"dir", dir}};
    if (fs::exists(m)) {
      const json j = json::parse(read_file(m.string()));
      src["config_hash"] = j.at("config_hash");
      src["dataset_config_hash"] = j.value("dataset_config_hash", "");
      src["agent"] = j.value("agent", "");
      for (const auto& [task, t] : j.at("tasks").items()) {
        for (const auto& [game, g] : t.at("per_game").items()) {
          if (g.at("n").get<int>() > 0) offline[parse_task_id(task)][parse_game_id(game)] = g.at("mean").get<double>();
        }
      }
    }
    if (fs::exists(p)) {
      const json j = json::parse(read_file(p.string()));
      src["play_config_hash"] = j.at("config_hash");
      src["agent"] = j.value("agent", "");
      for (const auto& [game, g] : j.at("per_game").items()) {
        if (g.at("completed").get<int>() > 0) e2e[parse_game_id(game)] = g;
      }
    }
    sources.push_back(src);
  }
  json tasks = json::object();
  for (const auto& [task, per] : offline) {
    json per_game = json::object();
    for (const auto& [g, v] : per) per_game[std::string(game_id(g))] = v;
    tasks[std::string(task_id(task))] = {{"per_game", per_game}, {"overall", overall_or_null(task, per)}};
  }
  if (!e2e.empty()) {
    json per_game = json::object();
    std::map<GameKind, double> norm;
    for (const auto& [g, v] : e2e) {
      per_game[std::string(game_id(g))] = {{"mean_raw", v.at("mean_raw")}, {"mean_normalized", v.at("mean_normalized")}};
      norm[g] = v.at("mean_normalized").get<double>();
    }
    tasks["e2e"] = {{"per_game", per_game}, {"overall", overall_or_null(TaskKind::E2E, norm)}};
  }
  json overall = json::object();
  for (TaskKind t : kAllTasks) {
    const std::string id(task_id(t));
    overall[id] = tasks.contains(id) ? tasks[id]["overall"] : json(nullptr);
  }
  const json report = {{"inputs", sources},
                       {"merge_rule", "later inputs replace earlier ones for the same game and task"},
                       {"tasks", tasks},
                       {"overall", overall}};
  if (!out_dir.empty()) {
    write_file((fs::path(out_dir) / "report.json").string(), report.dump(1) + "\n");
    write_file((fs::path(out_dir) / "report.txt").string(), report_text(report));
  }
  return report;
}

std::string report_text(const json& report) {
  std::ostringstream os;
  char line[160];
  os << "inputs:\n";
  for (const auto& s : report.at("inputs")) {
    os << "  " << s.at("dir").get<std::string>();
    if (s.contains("config_hash")) os << "  config " << s.at("config_hash").get<std::string>().substr(0, 16);
    if (s.contains("play_config_hash")) os << "  play config " << s.at("play_config_hash").get<std::string>().substr(0, 16);
    os << "\n";
  }
  const auto& tasks = report.at("tasks");
  for (TaskKind t : kAllTasks) {
    const std::string id(task_id(t));
    if (!tasks.contains(id)) continue;
    os << "\n" << id << (t == TaskKind::E2E ? " (mean session score)" : " (mean per-sample score)") << "\n";
    if (t == TaskKind::E2E) {
      std::snprintf(line, sizeof line, "  %-12s %10s %10s\n", "game", "raw", "normalized");
      os << line;
    }
    for (GameKind g : kAllGames) {
      const std::string gid(game_id(g));
      if (!tasks[id]["per_game"].contains(gid)) continue;
      const json& v = tasks[id]["per_game"][gid];
      if (t == TaskKind::E2E) {
        std::snprintf(line, sizeof line, "  %-12s %10.2f %10.4f\n", gid.c_str(), v.at("mean_raw").get<double>(),
                      v.at("mean_normalized").get<double>());
      } else {
        std::snprintf(line, sizeof line, "  %-12s %10.4f\n", gid.c_str(), v.get<double>());
      }
      os << line;
    }
  }
  os << "\noverall scores (star-weighted):\n";
  for (TaskKind t : kAllTasks) {
    const std::string task(task_id(t));
    const json& v = report.at("overall").at(task);
    if (v.is_null()) {
      std::snprintf(line, sizeof line, "  %-12s %10s\n", task.c_str(), "n/a");
    } else {
      std::snprintf(line, sizeof line, "  %-12s %10.4f\n", task.c_str(), v.get<double>());
    }
    os << line;
  }
  return os.str();
}

json strip_volatile(json j) {
  if (j.is_object()) {
    for (const char* key : {"latency_ms", "started_at", "finished_at"}) j.erase(key);
    for (auto& [k, v] : j.items()) v = strip_volatile(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = strip_volatile(v);
  }
  return j;
}

}  // namespace boardeval
