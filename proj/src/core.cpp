#include "boardeval/core.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "boardeval/rng.hpp"

namespace boardeval {

std::string_view game_id(GameKind kind) {
  switch (kind) {
    case GameKind::TicTacToe: return "tictactoe";
    case GameKind::Reversi: return "reversi";
    case GameKind::Sudoku: return "sudoku";
    case GameKind::Minesweeper: return "minesweeper";
    case GameKind::Gomoku: return "gomoku";
    case GameKind::Chess: return "chess";
  }
  return "?";
}

std::string_view game_title(GameKind kind) {
  switch (kind) {
    case GameKind::TicTacToe: return "Tic Tac Toe";
    case GameKind::Reversi: return "Reversi";
    case GameKind::Sudoku: return "Sudoku";
    case GameKind::Minesweeper: return "Minesweeper";
    case GameKind::Gomoku: return "Gomoku";
    case GameKind::Chess: return "Chess";
  }
  return "?";
}

GameKind parse_game_id(std::string_view text) {
  const std::string lowered = to_lower(trim(text));
  for (GameKind k : kAllGames) {
    if (game_id(k) == lowered) return k;
  }
  if (lowered == "ttt" || lowered == "tic-tac-toe") return GameKind::TicTacToe;
  if (lowered == "othello") return GameKind::Reversi;
  throw Error(ErrorCode::InvalidArgument, "unknown game: " + std::string(text));
}

std::string_view task_id(TaskKind task) {
  switch (task) {
    case TaskKind::Perceiving: return "perceiving";
    case TaskKind::QA: return "qa";
    case TaskKind::RuleFollowing: return "rule";
    case TaskKind::E2E: return "e2e";
  }
  return "?";
}

TaskKind parse_task_id(std::string_view text) {
  const std::string lowered = to_lower(trim(text));
  for (TaskKind t : kAllTasks) {
    if (task_id(t) == lowered) return t;
  }
  if (lowered == "rule_following" || lowered == "rule-following") return TaskKind::RuleFollowing;
  if (lowered == "perceive") return TaskKind::Perceiving;
  throw Error(ErrorCode::InvalidArgument, "unknown task: " + std::string(text));
}

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::OutOfBounds: return "out_of_bounds";
    case ErrorCode::Unparseable: return "unparseable";
    case ErrorCode::IllegalMove: return "illegal_move";
    case ErrorCode::TerminalState: return "terminal_state";
    case ErrorCode::GenerationExhausted: return "generation_exhausted";
    case ErrorCode::Transport: return "transport";
    case ErrorCode::MalformedResponse: return "malformed_response";
    case ErrorCode::ScriptExhausted: return "script_exhausted";
    case ErrorCode::Io: return "io";
  }
  return "?";
}

Dims board_dims(GameKind kind) {
  switch (kind) {
    case GameKind::TicTacToe: return {3, 3};
    case GameKind::Reversi: return {8, 8};
    case GameKind::Sudoku: return {9, 9};
    case GameKind::Minesweeper: return {8, 8};
    case GameKind::Gomoku: return {15, 15};
    case GameKind::Chess: return {8, 8};
  }
  return {0, 0};
}

namespace {

constexpr std::array<int, 3> kTicTacToeAlphabet{-1, 0, 1};
constexpr std::array<int, 3> kStoneAlphabet{0, 1, 2};
constexpr std::array<int, 10> kSudokuAlphabet{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
constexpr std::array<int, 11> kMinesweeperAlphabet{-1, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
constexpr std::array<int, 13> kChessAlphabet{0, 1, 2, 3, 4, 5, 6, -1, -2, -3, -4, -5, -6};

}  // namespace

std::span<const int> cell_alphabet(GameKind kind) {
  switch (kind) {
    case GameKind::TicTacToe: return kTicTacToeAlphabet;
    case GameKind::Reversi:
    case GameKind::Gomoku: return kStoneAlphabet;
    case GameKind::Sudoku: return kSudokuAlphabet;
    case GameKind::Minesweeper: return kMinesweeperAlphabet;
    case GameKind::Chess: return kChessAlphabet;
  }
  return {};
}

int empty_cell_value(GameKind kind) {
  return (kind == GameKind::TicTacToe || kind == GameKind::Minesweeper) ? -1 : 0;
}

bool in_alphabet(GameKind kind, int value) {
  const auto alpha = cell_alphabet(kind);
  return std::find(alpha.begin(), alpha.end(), value) != alpha.end();
}

bool in_bounds(GameKind kind, CellCoord c) {
  const Dims d = board_dims(kind);
  return c.row >= 0 && c.row < d.rows && c.col >= 0 && c.col < d.cols;
}

BoardMatrix::BoardMatrix(GameKind kind, std::vector<int> cells)
    : kind_(kind), dims_(board_dims(kind)), cells_(std::move(cells)) {
  if (static_cast<int>(cells_.size()) != dims_.cells()) {
    throw Error(ErrorCode::InvalidArgument,
                "matrix for " + std::string(game_id(kind)) + " needs " +
                    std::to_string(dims_.cells()) + " cells, got " + std::to_string(cells_.size()));
  }
  for (int v : cells_) {
    if (!in_alphabet(kind, v)) {
      throw Error(ErrorCode::InvalidArgument,
                  "value " + std::to_string(v) + " outside the " + std::string(game_id(kind)) +
                      " alphabet");
    }
  }
}

BoardMatrix BoardMatrix::filled(GameKind kind, int value) {
  return BoardMatrix(kind, std::vector<int>(static_cast<size_t>(board_dims(kind).cells()), value));
}

BoardMatrix BoardMatrix::with(CellCoord c, int value) const {
  if (!in_bounds(kind_, c)) throw Error(ErrorCode::OutOfBounds, "cell out of bounds");
  std::vector<int> copy = cells_;
  copy[static_cast<size_t>(c.row * dims_.cols + c.col)] = value;
  return BoardMatrix(kind_, std::move(copy));
}

IntGrid to_grid(const BoardMatrix& m) {
  return IntGrid{m.rows(), m.cols(), std::vector<int>(m.cells().begin(), m.cells().end())};
}

std::string matrix_to_text(const BoardMatrix& m) {
  std::string out = "[";
  for (int r = 0; r < m.rows(); ++r) {
    if (r) out += ", ";
    out += '[';
    for (int c = 0; c < m.cols(); ++c) {
      if (c) out += ", ";
      out += std::to_string(m.at(r, c));
    }
    out += ']';
  }
  out += ']';
  return out;
}

BoardMatrix text_to_matrix(GameKind kind, std::string_view text) {
  const Dims d = board_dims(kind);
  std::vector<int> cells;
  size_t i = 0;
  auto fail = [&](const char* why) {
    return Error(ErrorCode::Unparseable, std::string("matrix text: ") + why);
  };
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto expect = [&](char ch) {
    skip_ws();
    if (i >= text.size() || text[i] != ch) throw fail("unexpected character");
    ++i;
  };
  expect('[');
  for (int r = 0; r < d.rows; ++r) {
    if (r) expect(',');
    expect('[');
    for (int c = 0; c < d.cols; ++c) {
      if (c) expect(',');
      skip_ws();
      size_t start = i;
      if (i < text.size() && text[i] == '-') ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == start || (text[start] == '-' && i == start + 1)) throw fail("expected integer");
      cells.push_back(std::stoi(std::string(text.substr(start, i - start))));
    }
    expect(']');
  }
  expect(']');
  skip_ws();
  if (i != text.size()) throw fail("trailing characters");
  return BoardMatrix(kind, std::move(cells));
}

// ---------------------------------------------------------------------------
// Labels

namespace {

enum class LabelStyle { RowLetterColNumber, ColLetterRowNumber, ChessSquare };

LabelStyle label_style(GameKind kind) {
  switch (kind) {
    case GameKind::Gomoku: return LabelStyle::ColLetterRowNumber;
    case GameKind::Chess: return LabelStyle::ChessSquare;
    default: return LabelStyle::RowLetterColNumber;
  }
}

}  // namespace

std::string coord_to_label(GameKind kind, CellCoord c) {
  if (!in_bounds(kind, c)) {
    throw Error(ErrorCode::OutOfBounds, "coordinate (" + std::to_string(c.row) + ", " +
                                            std::to_string(c.col) + ") out of bounds for " +
                                            std::string(game_id(kind)));
  }
  switch (label_style(kind)) {
    case LabelStyle::RowLetterColNumber:
      return std::string(1, static_cast<char>('A' + c.row)) + std::to_string(c.col + 1);
    case LabelStyle::ColLetterRowNumber:
      return std::string(1, static_cast<char>('A' + c.col)) + std::to_string(c.row + 1);
    case LabelStyle::ChessSquare:
      return std::string(1, static_cast<char>('a' + c.col)) + std::to_string(8 - c.row);
  }
  return {};
}

CellCoord label_to_coord(GameKind kind, std::string_view text) {
  const std::string_view t = trim(text);
  auto unparseable = [&] {
    return Error(ErrorCode::Unparseable, "cannot parse label '" + std::string(text) + "'");
  };
  char letter = 0;
  std::string digits;
  size_t i = 0;
  auto read_letter = [&] {
    if (i < t.size() && std::isalpha(static_cast<unsigned char>(t[i]))) {
      letter = static_cast<char>(std::toupper(static_cast<unsigned char>(t[i])));
      ++i;
      return true;
    }
    return false;
  };
  auto read_digits = [&] {
    size_t start = i;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
    digits = std::string(t.substr(start, i - start));
    return !digits.empty();
  };
  auto skip_ws = [&] {
    while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
  };
  if (read_letter()) {
    skip_ws();
    if (!read_digits()) throw unparseable();
  } else if (read_digits()) {
    skip_ws();
    if (!read_letter()) throw unparseable();
  } else {
    throw unparseable();
  }
  if (i != t.size() || digits.size() > 2) throw unparseable();
  const int number = std::stoi(digits);
  const Dims d = board_dims(kind);
  CellCoord c;
  switch (label_style(kind)) {
    case LabelStyle::RowLetterColNumber:
      c = {letter - 'A', number - 1};
      break;
    case LabelStyle::ColLetterRowNumber:
      c = {number - 1, letter - 'A'};
      break;
    case LabelStyle::ChessSquare:
      c = {8 - number, letter - 'A'};
      break;
  }
  if (c.row < 0 || c.row >= d.rows || c.col < 0 || c.col >= d.cols) {
    throw Error(ErrorCode::OutOfBounds,
                "label '" + std::string(text) + "' out of range for " + std::string(game_id(kind)));
  }
  return c;
}

// ---------------------------------------------------------------------------

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Seed derive_seed(Seed parent, std::string_view tag, std::uint64_t index) {
  std::uint64_t state = parent.value ^ fnv1a64(tag);
  std::uint64_t a = splitmix64(state);
  state = a ^ (index * 0xD1B54A32D192ED03ULL);
  return Seed{splitmix64(state)};
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

std::string_view trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace boardeval
