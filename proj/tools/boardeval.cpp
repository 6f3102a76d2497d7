// Command-line entry point: gen, run, play, rate, report.
#include <iostream>

#include "CLI11.hpp"

#include "boardeval/commands.hpp"

using namespace boardeval;

namespace {

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string games;
  std::string tasks;
  std::string out;
  int parallelism = 1;
  std::optional<int> samples;
  std::optional<int> e2e_games;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "Run configuration (JSON)")->check(CLI::ExistingFile);
  cmd->add_option("--seed", c.seed, "Run seed");
  cmd->add_option("--games", c.games, "Comma-separated games, e.g. tictactoe,chess");
  cmd->add_option("--out", c.out, "Output directory");
  cmd->add_option("--parallelism", c.parallelism, "Worker threads")->check(CLI::PositiveNumber);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!trim(item).empty()) out.emplace_back(trim(item));
  }
  return out;
}

RunConfig resolve(const Common& c) {
  RunConfig cfg = c.config_path.empty() ? RunConfig{} : load_config(c.config_path);
  if (c.seed) cfg.seed = Seed{*c.seed};
  if (!c.games.empty()) {
    cfg.games.clear();
    for (const auto& g : split_list(c.games)) cfg.games.push_back(parse_game_id(g));
  }
  if (!c.tasks.empty()) {
    cfg.tasks.clear();
    for (const auto& t : split_list(c.tasks)) cfg.tasks.push_back(parse_task_id(t));
  }
  if (c.samples) cfg.samples_per_task = *c.samples;
  if (c.e2e_games) cfg.e2e_games = *c.e2e_games;
  if (!c.out.empty()) cfg.output_dir = c.out;
  if (cfg.agent.type == "http") cfg.agent.http.parallelism = c.parallelism;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Board-game evaluation harness for vision-language models"};
  app.require_subcommand(1);

  Common gen_opts, run_opts, play_opts;
  std::string dataset;
  bool resume = false;
  std::string rate_out;
  std::vector<std::string> report_inputs;
  std::string report_out;

  auto* gen = app.add_subcommand("gen", "Generate the offline datasets");
  add_common(gen, gen_opts);
  gen->add_option("--tasks", gen_opts.tasks, "Comma-separated tasks: perceiving,qa,rule");
  gen->add_option("--samples", gen_opts.samples, "Samples per game and task");

  auto* run = app.add_subcommand("run", "Query the configured agent on a generated dataset");
  add_common(run, run_opts);
  run->add_option("--tasks", run_opts.tasks, "Comma-separated tasks");
  run->add_option("--dataset", dataset, "Dataset directory (defaults to --out)");
  run->add_flag("--resume", resume, "Skip samples already present in results.jsonl");

  auto* play = app.add_subcommand("play", "Play end-to-end sessions against the opponents");
  add_common(play, play_opts);
  play->add_option("--sessions", play_opts.e2e_games, "Sessions per game");

  auto* rate = app.add_subcommand("rate", "Print the ability-complexity tables");
  rate->add_option("--out", rate_out, "Also write ratings.txt and ratings.json here");

  auto* report = app.add_subcommand("report", "Summarise one or more run directories");
  report->add_option("inputs", report_inputs, "Run directories")->required();
  report->add_option("--out", report_out, "Where to write report.json and report.txt");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const RunConfig cfg = resolve(gen_opts);
      const auto s = cmd_gen(cfg, cfg.output_dir);
      std::cout << "wrote " << s.samples << " samples to " << s.dir << "\n";
    } else if (run->parsed()) {
      const RunConfig cfg = resolve(run_opts);
      const auto s = cmd_run(cfg, dataset.empty() ? cfg.output_dir : dataset, cfg.output_dir, resume,
                             run_opts.parallelism);
      std::cout << "evaluated " << s.evaluated << " samples (" << s.skipped << " already done)\n"
                << s.metrics.at("tasks").dump(1) << "\n";
    } else if (play->parsed()) {
      const RunConfig cfg = resolve(play_opts);
      const auto m = cmd_play(cfg, cfg.output_dir, play_opts.parallelism);
      std::cout << m.dump(1) << "\n";
    } else if (rate->parsed()) {
      std::cout << cmd_rate(rate_out);
    } else if (report->parsed()) {
      const auto r = cmd_report(report_inputs, report_out);
      std::cout << report_text(r);
    }
  } catch (const Error& e) {
    std::cerr << "error (" << error_code_name(e.code()) << "): " << e.what() << "\n";
    return 2;
  }
  return 0;
}
