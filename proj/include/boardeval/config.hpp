#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "boardeval/client.hpp"
#include "boardeval/core.hpp"
#include "boardeval/opponents.hpp"
#include "boardeval/render.hpp"
#include "boardeval/statesgen.hpp"

namespace boardeval {

struct AgentSpec {
  std::string type = "random";  // random | oracle | scripted | http
  AdapterConfig http;
  std::vector<std::string> script;
};

struct RunConfig {
  std::vector<GameKind> games{kAllGames.begin(), kAllGames.end()};
  std::vector<TaskKind> tasks{TaskKind::Perceiving, TaskKind::QA, TaskKind::RuleFollowing};
  int samples_per_task = 2000;
  int e2e_games = 100;
  Seed seed{0};
  std::map<GameKind, GenProfile> perception_profiles;
  std::map<GameKind, GenProfile> playout_profiles;
  Theme theme = default_theme();
  AgentSpec agent;
  OpponentConfig opponent;
  std::string chess_engine_env = "BOARDEVAL_CHESS_ENGINE";
  std::string output_dir = "out";

  RunConfig();
  const GenProfile& profile(GameKind kind, TaskKind task) const;
};

/// Full snapshot. Secrets never appear: only the name of the key variable.
nlohmann::json config_to_json(const RunConfig& c);
/// Missing keys keep their defaults. Throws Error{InvalidArgument}.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
/// sha256 of the canonical snapshot, minus the output directory.
std::string config_hash(const RunConfig& c);

nlohmann::json profile_to_json(const GenProfile& p);
GenProfile profile_from_json(const nlohmann::json& j, GenProfile base);

std::unique_ptr<ModelAdapter> make_agent(const RunConfig& c);
/// Opponent settings with the external engine resolved from the environment.
OpponentConfig resolved_opponent(const RunConfig& c);

}  // namespace boardeval
