#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "boardeval/chess.hpp"
#include "boardeval/core.hpp"

namespace boardeval {

/// First = the side that opens the game (O in Tic Tac Toe, black in Reversi
/// and Gomoku, white in Chess, the solver in the puzzles).
enum class Side : int { First = 0, Second = 1 };

inline Side other(Side s) { return s == Side::First ? Side::Second : Side::First; }

struct CellMove {
  CellCoord cell;
  bool operator==(const CellMove&) const = default;
};

struct DigitMove {
  CellCoord cell;
  int digit = 0;
  bool operator==(const DigitMove&) const = default;
};

struct SanMove {
  std::string san;
  bool operator==(const SanMove&) const = default;
};

struct MoveSpec {
  GameKind kind;
  std::variant<CellMove, DigitMove, SanMove> payload;

  static MoveSpec cell(GameKind kind, CellCoord c) { return {kind, CellMove{c}}; }
  static MoveSpec digit(CellCoord c, int d) { return {GameKind::Sudoku, DigitMove{c, d}}; }
  static MoveSpec chess(std::string san) { return {GameKind::Chess, SanMove{std::move(san)}}; }

  bool operator==(const MoveSpec&) const = default;
};

/// Textual move in the prompt grammar: "B2", "A1 5", "Nf3".
std::string move_to_text(const MoveSpec& m);

struct Outcome {
  enum class Status { Ongoing, Win, Tie, Loss };
  Status status = Status::Ongoing;
  Side side = Side::First;  // winner for Win, loser for Loss

  static Outcome ongoing() { return {}; }
  static Outcome win(Side s) { return {Status::Win, s}; }
  static Outcome loss(Side s) { return {Status::Loss, s}; }
  static Outcome tie() { return {Status::Tie, Side::First}; }

  bool terminal() const { return status != Status::Ongoing; }
  bool operator==(const Outcome&) const = default;
};

std::string outcome_to_text(const Outcome& o);

// Per-game state payloads. Cell arrays are row-major in the perceiving
// encoding of each game.

struct TicTacToeData {
  std::array<std::int8_t, 9> cells{};  // -1 empty, 0 O, 1 X
  bool operator==(const TicTacToeData&) const = default;
};

struct ReversiData {
  std::array<std::int8_t, 64> cells{};  // 0 empty, 1 black, 2 white
  bool operator==(const ReversiData&) const = default;
};

struct GomokuData {
  std::array<std::int8_t, 225> cells{};  // 0 empty, 1 black, 2 white
  bool operator==(const GomokuData&) const = default;
};

struct SudokuData {
  std::array<std::int8_t, 81> grid{};
  std::array<std::int8_t, 81> solution{};
  std::bitset<81> clues;
  int clue_target = 30;
  bool operator==(const SudokuData&) const = default;
};

struct MinesweeperData {
  std::bitset<64> mines;
  std::bitset<64> revealed;
  bool exploded = false;
  bool operator==(const MinesweeperData&) const = default;
};

struct ChessData {
  chess::Position position;
  std::vector<std::string> history;  // repetition keys since the last irreversible move
  int captured_black_value = 0;
  int captured_white_value = 0;
  bool operator==(const ChessData& o) const {
    return position.fen() == o.position.fen() && history == o.history &&
           captured_black_value == o.captured_black_value &&
           captured_white_value == o.captured_white_value;
  }
};

using GameData =
    std::variant<TicTacToeData, ReversiData, SudokuData, MinesweeperData, GomokuData, ChessData>;

/// Rule-consistent engine state. Engines are pure: apply_move returns a new
/// value and never mutates its input.
class GameState {
 public:
  GameState(GameKind kind, Seed origin, GameData data, Side to_move)
      : kind_(kind), origin_(origin), data_(std::move(data)), side_to_move_(to_move) {}

  GameKind kind() const { return kind_; }
  Seed origin_seed() const { return origin_; }
  Side side_to_move() const { return side_to_move_; }
  const std::vector<MoveSpec>& move_log() const { return move_log_; }
  const GameData& data() const { return data_; }

  template <typename T>
  const T& as() const { return std::get<T>(data_); }

  bool operator==(const GameState&) const = default;

 private:
  friend GameState apply_move(const GameState&, const MoveSpec&);
  friend GameState with_side_to_move(GameState, Side);

  GameKind kind_;
  Seed origin_;
  GameData data_;
  Side side_to_move_;
  std::vector<MoveSpec> move_log_;
};

GameState initial_state(GameKind kind, Seed seed);
std::vector<MoveSpec> legal_moves(const GameState& s);
bool is_legal(const GameState& s, const MoveSpec& m);
/// Throws Error{IllegalMove} or Error{TerminalState}.
GameState apply_move(const GameState& s, const MoveSpec& m);
Outcome terminal_status(const GameState& s);
BoardMatrix encode_board(const GameState& s);

/// Rebuilds the starting position this state descends from (same kind,
/// origin seed and Sudoku clue target) and replays the move log onto it.
GameState root_state(const GameState& s);
GameState replay(const GameState& root, const std::vector<MoveSpec>& moves);

/// Testing/generation hook: same state with a different side to move.
GameState with_side_to_move(GameState s, Side side);

namespace reversi {
/// Discs flipped by placing `player` (1 black / 2 white) at idx; empty if illegal.
std::vector<int> flips(const std::array<std::int8_t, 64>& cells, int idx, int player);
bool has_move(const std::array<std::int8_t, 64>& cells, int player);
int count(const std::array<std::int8_t, 64>& cells, int player);
}  // namespace reversi

namespace gomoku {
/// Longest contiguous run of `player` through any line on the board.
int longest_run(const std::array<std::int8_t, 225>& cells, int player);
}  // namespace gomoku

namespace sudoku {
bool placement_ok(const std::array<std::int8_t, 81>& grid, int idx, int digit);
/// Counts completions of `grid`, stopping once `limit` are found.
int count_solutions(std::array<std::int8_t, 81> grid, int limit);
bool solve(std::array<std::int8_t, 81>& grid);
}  // namespace sudoku

namespace minesweeper {
int adjacent_mines(const std::bitset<64>& mines, int idx);
}  // namespace minesweeper

}  // namespace boardeval
