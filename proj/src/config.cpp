#include "boardeval/config.hpp"

#include <cstdlib>
#include <fstream>

#include "boardeval/hash.hpp"

namespace boardeval {

using nlohmann::json;

RunConfig::RunConfig() {
  for (GameKind g : kAllGames) {
    perception_profiles[g] = default_profile(g, GenMode::PerceptionRandom);
    playout_profiles[g] = default_profile(g, GenMode::LegalPlayout);
  }
}

const GenProfile& RunConfig::profile(GameKind kind, TaskKind task) const {
  return task == TaskKind::RuleFollowing ? playout_profiles.at(kind) : perception_profiles.at(kind);
}

json profile_to_json(const GenProfile& p) {
  return {{"mode", p.mode == GenMode::PerceptionRandom ? "perception_random" : "legal_playout"},
          {"fill_density", p.fill_density},
          {"depth_min", p.depth_min},
          {"depth_max", p.depth_max},
          {"sudoku_clues", p.sudoku_clues},
          {"max_attempts", p.max_attempts}};
}

GenProfile profile_from_json(const json& j, GenProfile p) {
  if (j.contains("mode")) {
    const auto m = j.at("mode").get<std::string>();
    if (m == "perception_random") {
      p.mode = GenMode::PerceptionRandom;
    } else if (m == "legal_playout") {
      p.mode = GenMode::LegalPlayout;
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown generation mode " + m);
    }
  }
  p.fill_density = j.value("fill_density", p.fill_density);
  p.depth_min = j.value("depth_min", p.depth_min);
  p.depth_max = j.value("depth_max", p.depth_max);
  p.sudoku_clues = j.value("sudoku_clues", p.sudoku_clues);
  p.max_attempts = j.value("max_attempts", p.max_attempts);
  validate(p);
  return p;
}

namespace {

json search_to_json(const SearchConfig& s) {
  json j = {{"max_depth", s.max_depth}, {"eval_weights", s.eval_weights}};
  j["time_budget_ms"] = s.time_budget_ms ? json(*s.time_budget_ms) : json(nullptr);
  return j;
}

SearchConfig search_from_json(const json& j, SearchConfig s) {
  s.max_depth = j.value("max_depth", s.max_depth);
  if (j.contains("eval_weights")) {
    for (const auto& [k, v] : j.at("eval_weights").items()) s.eval_weights[k] = v.get<double>();
  }
  if (j.contains("time_budget_ms")) {
    const auto& t = j.at("time_budget_ms");
    s.time_budget_ms = t.is_null() ? std::nullopt : std::optional<int>(t.get<int>());
  }
  return s;
}

template <typename T>
std::vector<std::string> ids(const std::vector<T>& items, std::string_view (*fn)(T)) {
  std::vector<std::string> out;
  for (T t : items) out.emplace_back(fn(t));
  return out;
}

}  // namespace

json config_to_json(const RunConfig& c) {
  json profiles = json::object();
  for (GameKind g : kAllGames) {
    profiles[std::string(game_id(g))] = {{"perception", profile_to_json(c.perception_profiles.at(g))},
                                         {"playout", profile_to_json(c.playout_profiles.at(g))}};
  }
  json palette = json::object();
  for (const auto& [name, rgb] : c.theme.palette) palette[name] = {rgb.r, rgb.g, rgb.b};
  const AdapterConfig& h = c.agent.http;
  return {
      {"games", ids(c.games, game_id)},
      {"tasks", ids(c.tasks, task_id)},
      {"samples_per_task", c.samples_per_task},
      {"e2e_games", c.e2e_games},
      {"seed", c.seed.value},
      {"profiles", profiles},
      {"theme",
       {{"image_px", c.theme.image_px},
        {"gomoku_image_px", c.theme.gomoku_image_px},
        {"show_labels", c.theme.show_labels},
        {"palette", palette}}},
      {"agent",
       {{"type", c.agent.type},
        {"script", c.agent.script},
        {"endpoint_url", h.endpoint_url},
        {"model_name", h.model_name},
        {"api_key_env", h.api_key_env},
        {"max_new_tokens", h.max_new_tokens},
        {"temperature", h.temperature},
        {"timeout_ms", h.timeout_ms},
        {"max_retries", h.max_retries},
        {"initial_backoff_ms", h.initial_backoff_ms},
        {"parallelism", h.parallelism}}},
      {"opponent",
       {{"reversi", search_to_json(c.opponent.reversi)},
        {"gomoku", search_to_json(c.opponent.gomoku)},
        {"chess", search_to_json(c.opponent.chess)},
        {"chess_engine_env", c.chess_engine_env},
        {"engine_movetime_ms", c.opponent.engine.movetime_ms}}},
      {"output_dir", c.output_dir},
  };
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  try {
    if (j.contains("games")) {
      c.games.clear();
      for (const auto& g : j.at("games")) c.games.push_back(parse_game_id(g.get<std::string>()));
    }
    if (j.contains("tasks")) {
      c.tasks.clear();
      for (const auto& t : j.at("tasks")) c.tasks.push_back(parse_task_id(t.get<std::string>()));
    }
    c.samples_per_task = j.value("samples_per_task", c.samples_per_task);
    c.e2e_games = j.value("e2e_games", c.e2e_games);
    if (c.samples_per_task < 0 || c.e2e_games < 0) throw Error(ErrorCode::InvalidArgument, "negative counts");
    c.seed.value = j.value("seed", c.seed.value);
    if (j.contains("profiles")) {
      for (const auto& [name, p] : j.at("profiles").items()) {
        const GameKind g = parse_game_id(name);
        if (p.contains("perception")) c.perception_profiles[g] = profile_from_json(p.at("perception"), c.perception_profiles[g]);
        if (p.contains("playout")) c.playout_profiles[g] = profile_from_json(p.at("playout"), c.playout_profiles[g]);
      }
    }
    if (j.contains("theme")) {
      const auto& t = j.at("theme");
      c.theme.image_px = t.value("image_px", c.theme.image_px);
      c.theme.gomoku_image_px = t.value("gomoku_image_px", c.theme.gomoku_image_px);
      c.theme.show_labels = t.value("show_labels", c.theme.show_labels);
      if (t.contains("palette")) {
        for (const auto& [name, rgb] : t.at("palette").items()) {
          c.theme.palette[name] = {rgb.at(0).get<std::uint8_t>(), rgb.at(1).get<std::uint8_t>(),
                                   rgb.at(2).get<std::uint8_t>()};
        }
      }
    }
    if (j.contains("agent")) {
      const auto& a = j.at("agent");
      AdapterConfig& h = c.agent.http;
      c.agent.type = a.value("type", c.agent.type);
      if (a.contains("script")) c.agent.script = a.at("script").get<std::vector<std::string>>();
      h.endpoint_url = a.value("endpoint_url", h.endpoint_url);
      h.model_name = a.value("model_name", h.model_name);
      h.api_key_env = a.value("api_key_env", h.api_key_env);
      h.max_new_tokens = a.value("max_new_tokens", h.max_new_tokens);
      h.temperature = a.value("temperature", h.temperature);
      h.timeout_ms = a.value("timeout_ms", h.timeout_ms);
      h.max_retries = a.value("max_retries", h.max_retries);
      h.initial_backoff_ms = a.value("initial_backoff_ms", h.initial_backoff_ms);
      h.parallelism = a.value("parallelism", h.parallelism);
      if (a.contains("api_key")) {
        throw Error(ErrorCode::InvalidArgument, "put the API key in the environment and name it in agent.api_key_env");
      }
    }
    if (j.contains("opponent")) {
      const auto& o = j.at("opponent");
      if (o.contains("reversi")) c.opponent.reversi = search_from_json(o.at("reversi"), c.opponent.reversi);
      if (o.contains("gomoku")) c.opponent.gomoku = search_from_json(o.at("gomoku"), c.opponent.gomoku);
      if (o.contains("chess")) c.opponent.chess = search_from_json(o.at("chess"), c.opponent.chess);
      c.chess_engine_env = o.value("chess_engine_env", c.chess_engine_env);
      c.opponent.engine.movetime_ms = o.value("engine_movetime_ms", c.opponent.engine.movetime_ms);
    }
    c.output_dir = j.value("output_dir", c.output_dir);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad config: ") + e.what());
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read config " + path);
  const auto j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::InvalidArgument, "config is not JSON: " + path);
  return config_from_json(j);
}

std::string config_hash(const RunConfig& c) {
  json j = config_to_json(c);
  j.erase("output_dir");
  return sha256_hex(j.dump());
}

std::unique_ptr<ModelAdapter> make_agent(const RunConfig& c) {
  const std::string& t = c.agent.type;
  if (t == "random") return std::make_unique<RandomAgent>(derive_seed(c.seed, "agent"));
  if (t == "oracle") return std::make_unique<OracleAgent>();
  if (t == "scripted") return std::make_unique<ScriptedAgent>(c.agent.script);
  if (t == "http") return std::make_unique<HttpAdapter>(c.agent.http);
  throw Error(ErrorCode::InvalidArgument, "unknown agent type " + t);
}

OpponentConfig resolved_opponent(const RunConfig& c) {
  OpponentConfig o = c.opponent;
  const char* path = std::getenv(c.chess_engine_env.c_str());
  o.engine.enabled = path && *path;
  o.engine.executable = o.engine.enabled ? path : "";
  return o;
}

}  // namespace boardeval
