#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "boardeval/core.hpp"
#include "boardeval/engines.hpp"
#include "boardeval/ratings.hpp"
#include "boardeval/records.hpp"

namespace boardeval {

enum class ParseStatus { Ok, InvalidFormat };

struct E2ETriple {
  std::string observation;
  std::string strategy;
  std::string movement;
};

struct ParsedResponse {
  std::string raw;
  ParseStatus status = ParseStatus::InvalidFormat;
  std::variant<std::monostate, IntGrid, char, MoveSpec> payload;
  std::optional<E2ETriple> triple;
  std::string error;

  bool ok() const { return status == ParseStatus::Ok; }
  const IntGrid& matrix() const { return std::get<IntGrid>(payload); }
  char letter() const { return std::get<char>(payload); }
  const MoveSpec& move() const { return std::get<MoveSpec>(payload); }
};

/// Last "Game State" marker (any case), else the last bracketed block.
/// Rows may be bracketed or one per line, values separated by commas or
/// whitespace, optionally inside a code fence or a LaTeX bmatrix.
/// Dimensions must match the game exactly.
ParsedResponse parse_matrix(std::string_view text, GameKind kind);

/// Letter after the last "Answer" marker, else the last line holding a lone
/// A-D letter.
ParsedResponse parse_answer(std::string_view text);

/// Text after the last "Movement" marker, decoded per game. With `e2e` the
/// Observation and Strategy spans are captured as well.
ParsedResponse parse_move(std::string_view text, GameKind kind, bool e2e = false);

double score_perceiving(const ParsedResponse& parsed, const BoardMatrix& gt);
int score_qa(const ParsedResponse& parsed, const QAItem& item);
bool validate_rule_move(const ParsedResponse& parsed, const GameState& state);

/// Raw score of a finished session. Throws Error{InvalidArgument} when the
/// session is still ongoing or has no final state.
double score_e2e(const E2ESessionLog& log);

/// Largest score a session can reach; Sudoku depends on its clue count.
double e2e_max_score(GameKind kind, int sudoku_clues = 30);
/// score / max, clamped to [0, 1].
double normalize_e2e(GameKind kind, double score, int sudoku_clues = 30);

/// Abilities a task draws on: Perceiving {P}, QA {P,R}, Rule {P,R,D}, E2E all four.
std::vector<Ability> task_abilities(TaskKind task);
/// Mean star rating over the task's abilities, N/A excluded.
double task_weight(const AbilityScoreTable& stars, GameKind g, TaskKind task);

/// Star-weighted mean over the games in `per_game`. Throws
/// Error{InvalidArgument} if any game of `required` is missing.
double aggregate_overall(TaskKind task, const std::map<GameKind, double>& per_game,
                         const AbilityScoreTable& stars,
                         const std::vector<GameKind>& required = {kAllGames.begin(), kAllGames.end()});

}  // namespace boardeval
