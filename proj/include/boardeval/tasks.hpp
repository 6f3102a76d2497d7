#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "boardeval/client.hpp"
#include "boardeval/core.hpp"
#include "boardeval/engines.hpp"
#include "boardeval/opponents.hpp"
#include "boardeval/records.hpp"
#include "boardeval/render.hpp"
#include "boardeval/rng.hpp"
#include "boardeval/statesgen.hpp"

namespace boardeval {

struct QATruth {
  QAItem item;
  BoardMatrix matrix;
  bool operator==(const QATruth&) const = default;
};

/// One offline sample. Rule-Following keeps the state itself; validity is
/// decided by the engine when the answer arrives.
struct Sample {
  std::string id;
  GameKind kind = GameKind::TicTacToe;
  TaskKind task = TaskKind::Perceiving;
  std::vector<std::uint8_t> image;  // PNG
  std::string prompt;
  std::variant<std::monostate, BoardMatrix, QATruth, GameState> ground_truth;
  Seed seed;
  GenProfile profile;

  /// Matrix shown in the image.
  BoardMatrix matrix() const;
};

/// "tictactoe-qa-00017"
std::string sample_id(GameKind kind, TaskKind task, std::uint64_t index);
Seed sample_seed(Seed run_seed, GameKind kind, TaskKind task, std::uint64_t index);

/// Profile a task draws its states from: PerceptionRandom for Perceiving and
/// QA, LegalPlayout for Rule-Following.
GenProfile task_profile(GameKind kind, TaskKind task);

Sample make_perceiving_sample(GameKind kind, Seed seed, const GenProfile& profile, const Theme& theme,
                         bool render = true);
Sample make_qa_sample(GameKind kind, Seed seed, const GenProfile& profile, const Theme& theme,
                         bool render = true);
Sample make_rule_sample(GameKind kind, Seed seed, const GenProfile& profile, const Theme& theme,
                         bool render = true);

/// Dispatch plus id assignment. E2E has no offline samples.
Sample make_sample(GameKind kind, TaskKind task, Seed run_seed, std::uint64_t index, const GenProfile& profile,
                   const Theme& theme, bool render = true);

/// Regenerates the Rule-Following state from (seed, profile).
GameState rule_state(const Sample& s);

// ---------------------------------------------------------------------------
// Question answering

inline constexpr int kMaxFamilyRetries = 20;

/// Family tags of a game's question pool.
std::vector<std::string> qa_families(GameKind kind);

/// Picks a family uniformly, instantiates it against `m`, and shuffles the
/// options. Inapplicable families are redrawn up to kMaxFamilyRetries times.
/// Throws Error{GenerationExhausted}.
QAItem generate_qa_item(const BoardMatrix& m, Rng& rng);

/// Same, for one given family; nullopt when it does not apply to `m`.
std::optional<QAItem> instantiate_family(const BoardMatrix& m, const std::string& family, Rng& rng);

/// Correct option text recomputed from (family, params) over the matrix.
std::optional<std::string> qa_recompute(const BoardMatrix& m, const std::string& family,
                                        const std::map<std::string, int>& params);

/// Recomputed answer matches the stored correct option, options are
/// distinct and exactly one of them is correct.
bool qa_verify(const QATruth& truth);

// ---------------------------------------------------------------------------
// End-to-end play

inline constexpr int kMaxStrikes = 3;

/// TTT, Reversi, Gomoku and Chess have an opponent; the model always moves first.
bool is_competitive(GameKind kind);

struct SessionOptions {
  OpponentConfig opponent;
  Theme theme = default_theme();
  std::string key_prefix = "session";
};

/// Stateless turns: every query carries only the current screenshot and the
/// E2E prompt, plus the rejection notice after a strike.
E2ESessionLog run_e2e_session(GameKind kind, Seed seed, ModelAdapter& agent, const SessionOptions& opts);

/// Replays the logged legal moves (model and opponent) from the start.
GameState replay_session(const E2ESessionLog& log);

}  // namespace boardeval
