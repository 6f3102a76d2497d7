#include <gtest/gtest.h>

#include <filesystem>

#include "boardeval/commands.hpp"
#include "boardeval/hash.hpp"

using namespace boardeval;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("boardeval_cmd_" + name);
  fs::remove_all(p);
  return p;
}

RunConfig small_config(const std::string& agent = "random") {
  RunConfig c;
  c.samples_per_task = 4;
  c.e2e_games = 1;
  c.seed = Seed{31};
  c.agent.type = agent;
  return c;
}

std::map<std::string, std::string> tree_hashes(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = sha256_hex(read_file(e.path().string()));
  }
  return out;
}

std::vector<json> stripped_lines(const fs::path& p) {
  std::vector<json> out;
  std::istringstream in(read_file(p.string()));
  std::string line;
  while (std::getline(in, line)) out.push_back(strip_volatile(json::parse(line)));
  return out;
}

}  // namespace

TEST(Commands, GenIsByteIdentical) {
  const auto a = scratch("gen_a"), b = scratch("gen_b");
  EXPECT_EQ(cmd_gen(small_config(), a.string()).samples, 6u * 3u * 4u);
  cmd_gen(small_config(), b.string());
  EXPECT_EQ(tree_hashes(a), tree_hashes(b));
  const json m = json::parse(read_file((a / "manifest.json").string()));
  EXPECT_EQ(m.at("config_hash"), config_hash(small_config()));
  EXPECT_FALSE(m.at("config").at("agent").contains("api_key"));
}

TEST(Commands, SwappingAgentsKeepsSamples) {
  const auto a = scratch("agent_a"), b = scratch("agent_b");
  cmd_gen(small_config("random"), a.string());
  cmd_gen(small_config("oracle"), b.string());
  auto ha = tree_hashes(a), hb = tree_hashes(b);
  ha.erase("manifest.json");
  hb.erase("manifest.json");
  EXPECT_EQ(ha, hb);
  json ma = json::parse(read_file((a / "manifest.json").string()));
  json mb = json::parse(read_file((b / "manifest.json").string()));
  EXPECT_EQ(ma.at("samples"), mb.at("samples"));
}

TEST(Commands, RunIsReproducibleAndResumable) {
  const auto ds = scratch("run_ds"), r1 = scratch("run_1"), r2 = scratch("run_2");
  const RunConfig c = small_config();
  cmd_gen(c, ds.string());
  const auto full = cmd_run(c, ds.string(), r1.string(), false, 2);
  EXPECT_EQ(full.evaluated, 72u);

  // interrupt: keep 30 complete records plus a torn line
  cmd_run(c, ds.string(), r2.string(), false, 1);
  std::istringstream in(read_file((r2 / "results.jsonl").string()));
  std::string line, partial;
  for (int i = 0; i < 30 && std::getline(in, line); ++i) partial += line + "\n";
  write_file((r2 / "results.jsonl").string(), partial + "{\"id\": \"trunc");
  const auto resumed = cmd_run(c, ds.string(), r2.string(), true, 1);
  EXPECT_EQ(resumed.skipped, 30u);
  EXPECT_EQ(resumed.evaluated, 42u);
  EXPECT_EQ(stripped_lines(r1 / "results.jsonl"), stripped_lines(r2 / "results.jsonl"));
  EXPECT_EQ(read_file((r1 / "metrics.json").string()), read_file((r2 / "metrics.json").string()));
}

TEST(Commands, OracleReportIsPerfect) {
  const auto ds = scratch("oracle_ds"), run = scratch("oracle_run"), rep = scratch("oracle_rep");
  const RunConfig c = small_config("oracle");
  cmd_gen(c, ds.string());
  cmd_run(c, ds.string(), run.string(), false, 1);
  const json report = cmd_report({run.string()}, rep.string());
  for (const char* t : {"perceiving", "qa", "rule"}) EXPECT_DOUBLE_EQ(report["overall"][t].get<double>(), 1.0) << t;
  EXPECT_EQ(report["inputs"][0]["config_hash"], config_hash(c));
  EXPECT_NE(read_file((rep / "report.txt").string()).find(config_hash(c).substr(0, 16)), std::string::npos);
  EXPECT_THROW(cmd_report({scratch("nothing").string()}, ""), Error);
}

TEST(Commands, PlayWritesSessionsAndMetrics) {
  const auto out = scratch("play"), again = scratch("play_again");
  RunConfig c = small_config();
  c.games = {GameKind::TicTacToe, GameKind::Reversi};
  c.e2e_games = 3;
  const json m = cmd_play(c, out.string(), 2);
  EXPECT_EQ(m["per_game"]["tictactoe"]["sessions"], 3);
  EXPECT_TRUE(fs::exists(out / "sessions" / "reversi-e2e-00002.json"));
  cmd_play(c, again.string(), 1);
  for (const auto& e : fs::directory_iterator(out / "sessions")) {
    const auto other = again / "sessions" / e.path().filename();
    EXPECT_EQ(strip_volatile(json::parse(read_file(e.path().string()))),
              strip_volatile(json::parse(read_file(other.string()))));
  }
}

TEST(Commands, ZeroSessionsIsEmptySuccess) {
  RunConfig c = small_config();
  c.e2e_games = 0;
  const json m = cmd_play(c, scratch("play_zero").string(), 1);
  EXPECT_TRUE(m["per_game"].empty());
  EXPECT_TRUE(m["overall"].is_null());
}

TEST(Commands, ConfigRoundTripAndSecrets) {
  RunConfig c = small_config();
  c.games = {GameKind::Chess};
  c.perception_profiles[GameKind::Chess].fill_density = 0.3;
  const RunConfig back = config_from_json(config_to_json(c));
  EXPECT_EQ(config_to_json(back), config_to_json(c));
  EXPECT_THROW(config_from_json(json{{"agent", {{"api_key", "sk-123"}}}}), Error);
  EXPECT_THROW(config_from_json(json{{"games", {"checkers"}}}), Error);
}

TEST(Commands, RateWritesTables) {
  const auto out = scratch("rate");
  const std::string text = cmd_rate(out.string());
  EXPECT_NE(text.find("printed-constants path"), std::string::npos);
  EXPECT_TRUE(fs::exists(out / "ratings.json"));
}
