#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace boardeval {

enum class GameKind { TicTacToe, Reversi, Sudoku, Minesweeper, Gomoku, Chess };

inline constexpr std::array<GameKind, 6> kAllGames{
    GameKind::TicTacToe, GameKind::Reversi, GameKind::Sudoku,
    GameKind::Minesweeper, GameKind::Gomoku, GameKind::Chess};

/// Stable lowercase identifier used in file names, manifests and CLI flags.
std::string_view game_id(GameKind kind);
/// Human-facing name ("Tic Tac Toe").
std::string_view game_title(GameKind kind);
GameKind parse_game_id(std::string_view text);

enum class TaskKind { Perceiving, QA, RuleFollowing, E2E };

inline constexpr std::array<TaskKind, 4> kAllTasks{
    TaskKind::Perceiving, TaskKind::QA, TaskKind::RuleFollowing, TaskKind::E2E};

/// "perceiving", "qa", "rule", "e2e".
std::string_view task_id(TaskKind task);
TaskKind parse_task_id(std::string_view text);

enum class ErrorCode {
  InvalidArgument,
  OutOfBounds,
  Unparseable,
  IllegalMove,
  TerminalState,
  GenerationExhausted,
  Transport,
  MalformedResponse,
  ScriptExhausted,
  Io,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct Dims {
  int rows;
  int cols;
  int cells() const { return rows * cols; }
  bool operator==(const Dims&) const = default;
};

Dims board_dims(GameKind kind);

/// Every value a cell may hold for the kind, empty value first.
std::span<const int> cell_alphabet(GameKind kind);
/// The value encoding "nothing here" (-1 for TTT/Minesweeper, 0 otherwise).
int empty_cell_value(GameKind kind);
bool in_alphabet(GameKind kind, int value);

struct CellCoord {
  int row = 0;
  int col = 0;
  auto operator<=>(const CellCoord&) const = default;
};

bool in_bounds(GameKind kind, CellCoord c);

/// Integer grid snapshot in a game's perceiving encoding. Row 0 is the top
/// of the rendered image for every game. Alphabet and dimensions are checked
/// on construction.
class BoardMatrix {
 public:
  BoardMatrix(GameKind kind, std::vector<int> cells);
  static BoardMatrix filled(GameKind kind, int value);
  static BoardMatrix empty(GameKind kind) { return filled(kind, empty_cell_value(kind)); }

  GameKind kind() const { return kind_; }
  int rows() const { return dims_.rows; }
  int cols() const { return dims_.cols; }
  int at(int row, int col) const { return cells_[static_cast<size_t>(row * dims_.cols + col)]; }
  int at(CellCoord c) const { return at(c.row, c.col); }
  std::span<const int> cells() const { return cells_; }
  std::span<const int> row(int r) const {
    return std::span<const int>(cells_).subspan(static_cast<size_t>(r * dims_.cols),
                                                static_cast<size_t>(dims_.cols));
  }

  BoardMatrix with(CellCoord c, int value) const;

  bool operator==(const BoardMatrix& other) const = default;

 private:
  GameKind kind_;
  Dims dims_;
  std::vector<int> cells_;
};

/// Unvalidated rectangular grid, as recovered from model output.
struct IntGrid {
  int rows = 0;
  int cols = 0;
  std::vector<int> cells;
  int at(int r, int c) const { return cells[static_cast<size_t>(r * cols + c)]; }
  bool operator==(const IntGrid&) const = default;
};

IntGrid to_grid(const BoardMatrix& m);

/// Canonical one-line text: "[[-1, -1, -1], [-1, -1, -1], [-1, -1, -1]]".
std::string matrix_to_text(const BoardMatrix& m);
/// Strict inverse of matrix_to_text (tolerant model-output parsing lives in
/// parse.hpp). Throws Error{Unparseable} or Error{InvalidArgument}.
BoardMatrix text_to_matrix(GameKind kind, std::string_view text);

std::string coord_to_label(GameKind kind, CellCoord c);
/// Accepts either letter-first or digit-first order, any letter case and
/// optional whitespace between the two parts.
CellCoord label_to_coord(GameKind kind, std::string_view text);

// ---------------------------------------------------------------------------
// Seeds

struct Seed {
  std::uint64_t value = 0;
  bool operator==(const Seed&) const = default;
};

/// child = mix(parent, tag, index). Independent streams for every
/// (domain, sample index) pair, so generation order never matters.
Seed derive_seed(Seed parent, std::string_view tag, std::uint64_t index = 0);

std::uint64_t fnv1a64(std::string_view bytes);

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);

}  // namespace boardeval
