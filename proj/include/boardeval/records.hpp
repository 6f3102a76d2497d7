#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "boardeval/core.hpp"
#include "boardeval/engines.hpp"

namespace boardeval {

struct QAOption {
  char letter = 'A';
  std::string text;
  bool operator==(const QAOption&) const = default;
};

/// Multiple-choice question. `params` holds the instantiated placeholders
/// (row, col, symbol, ...) so the answer can be recomputed from the matrix.
struct QAItem {
  std::string family;
  std::string question;
  std::map<std::string, int> params;
  std::vector<QAOption> options;
  char correct = 'A';

  /// Question followed by one "A. text" line per option.
  std::string block() const;
  const QAOption& correct_option() const;
  bool operator==(const QAItem&) const = default;
};

struct E2ETurn {
  int turn = 0;
  std::string image_sha256;
  std::string prompt;
  std::string raw;
  std::optional<std::string> move;  // canonical text of the parsed move
  std::string error;                // parse or legality failure
  bool valid = false;
  std::optional<std::string> opponent_reply;
  double latency_ms = 0;
};

struct E2ESessionLog {
  GameKind kind = GameKind::TicTacToe;
  Seed seed;
  std::vector<E2ETurn> transcript;
  int invalid_count = 0;
  int model_moves = 0;
  Outcome outcome;
  bool struck_out = false;
  bool aborted = false;  // adapter transport failure; never scored
  std::string abort_reason;
  std::optional<double> score;
  std::vector<std::string> warnings;
  std::optional<GameState> final_state;
};

}  // namespace boardeval
