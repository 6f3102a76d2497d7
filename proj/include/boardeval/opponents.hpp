#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "boardeval/engines.hpp"

namespace boardeval {

struct SearchConfig {
  int max_depth = 1;
  std::optional<int> time_budget_ms;
  std::map<std::string, double> eval_weights;

  double weight(const std::string& key, double fallback) const {
    auto it = eval_weights.find(key);
    return it == eval_weights.end() ? fallback : it->second;
  }
};

/// Reversi depth 4 {disc 1, corner 25, corner_adjacent -8, edge 5,
/// mobility 2, win 1000}; Gomoku depth 2 {five 1e6, open_four 1e4,
/// closed_four 1e3, open_three 1e3, closed_three 1e2, open_two 1e1,
/// closed_two 1}; Chess depth 3 {mobility 0.1}.
SearchConfig default_search_config(GameKind kind);

struct EngineEndpoint {
  std::string executable;
  int movetime_ms = 100;
  bool enabled = false;
};

/// Reads BOARDEVAL_CHESS_ENGINE; enabled when the variable is set and non-empty.
EngineEndpoint endpoint_from_env();

struct OpponentConfig {
  SearchConfig reversi = default_search_config(GameKind::Reversi);
  SearchConfig gomoku = default_search_config(GameKind::Gomoku);
  SearchConfig chess = default_search_config(GameKind::Chess);
  EngineEndpoint engine;
};

/// Full-depth minimax; lowest (row, col) among equally valued moves.
MoveSpec ttt_minimax_move(const GameState& s);
/// Game value for the side to move: +1 win, 0 tie, -1 loss.
int ttt_minimax_value(const GameState& s);

MoveSpec reversi_alphabeta_move(const GameState& s, const SearchConfig& cfg);
/// Static evaluation from `player`'s point of view (1 black, 2 white).
double reversi_eval(const std::array<std::int8_t, 64>& cells, int player, const SearchConfig& cfg);

MoveSpec gomoku_search_move(const GameState& s, const SearchConfig& cfg);
double gomoku_eval(const std::array<std::int8_t, 225>& cells, int player, const SearchConfig& cfg);

/// Material plus weighted pseudo-legal mobility, from white's point of view.
double chess_eval(const chess::Position& pos, const SearchConfig& cfg);

struct ChessReply {
  MoveSpec move;
  std::optional<std::string> warning;  // set when the external engine failed
};

class UciEngine;

/// External UCI engine when enabled, otherwise the internal alpha-beta.
/// `session` reuses a running engine; without it one is launched per call.
ChessReply chess_engine_move(const GameState& s, const EngineEndpoint& ep, const SearchConfig& cfg,
                             UciEngine* session = nullptr);
MoveSpec chess_search_move(const GameState& s, const SearchConfig& cfg);

/// Dispatch for the competitive games. Throws Error{InvalidArgument} for the
/// single-player puzzles.
MoveSpec opponent_move(const GameState& s, const OpponentConfig& cfg, std::vector<std::string>* warnings = nullptr,
                       UciEngine* session = nullptr);

}  // namespace boardeval
