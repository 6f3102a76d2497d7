#include "boardeval/tasks.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>

#include "boardeval/hash.hpp"
#include "boardeval/parse_eval.hpp"
#include "boardeval/prompts.hpp"

namespace boardeval {

std::string QAItem::block() const {
  std::string out = question;
  for (const auto& o : options) {
    out += '\n';
    out += o.letter;
    out += ". ";
    out += o.text;
  }
  return out;
}

const QAOption& QAItem::correct_option() const {
  for (const auto& o : options) {
    if (o.letter == correct) return o;
  }
  throw Error(ErrorCode::InvalidArgument, "correct letter not among the options");
}

BoardMatrix Sample::matrix() const {
  if (const auto* m = std::get_if<BoardMatrix>(&ground_truth)) return *m;
  if (const auto* q = std::get_if<QATruth>(&ground_truth)) return q->matrix;
  if (const auto* s = std::get_if<GameState>(&ground_truth)) return encode_board(*s);
  throw Error(ErrorCode::InvalidArgument, "sample has no ground truth");
}

std::string sample_id(GameKind kind, TaskKind task, std::uint64_t index) {
  char num[32];
  std::snprintf(num, sizeof num, "%05llu", static_cast<unsigned long long>(index));
  return std::string(game_id(kind)) + "-" + std::string(task_id(task)) + "-" + num;
}

Seed sample_seed(Seed run_seed, GameKind kind, TaskKind task, std::uint64_t index) {
  return derive_seed(run_seed, std::string(game_id(kind)) + "/" + std::string(task_id(task)), index);
}

GenProfile task_profile(GameKind kind, TaskKind task) {
  return default_profile(kind, task == TaskKind::RuleFollowing ? GenMode::LegalPlayout : GenMode::PerceptionRandom);
}

// ---------------------------------------------------------------------------
// Question families

namespace {

using Params = std::map<std::string, int>;

struct Answer {
  std::string text;
  bool numeric = false;
  int value = 0, lo = 0, hi = 0;
  std::vector<std::string> space;  // categorical: every admissible answer, correct included
};

Answer numeric(int v, int lo, int hi) { return {std::to_string(v), true, v, lo, hi, {}}; }
Answer categorical(std::string text, std::vector<std::string> space) {
  return {std::move(text), false, 0, 0, 0, std::move(space)};
}
Answer yes_no(bool yes) { return categorical(yes ? "Yes" : "No", {"Yes", "No"}); }

struct Family {
  std::string tag;
  std::function<std::optional<Params>(const BoardMatrix&, Rng&)> draw;
  std::function<std::string(const Params&)> question;
  std::function<std::optional<Answer>(const BoardMatrix&, const Params&)> answer;
};

// Labels as drawn on the screenshots.
std::string row_label(GameKind k, int r) {
  switch (k) {
    case GameKind::Gomoku: return std::to_string(r + 1);
    case GameKind::Chess: return std::to_string(8 - r);
    default: return std::string(1, static_cast<char>('A' + r));
  }
}
std::string col_label(GameKind k, int c) {
  switch (k) {
    case GameKind::Gomoku: return std::string(1, static_cast<char>('A' + c));
    case GameKind::Chess: return std::string(1, static_cast<char>('a' + c));
    default: return std::to_string(c + 1);
  }
}

int count_if(const BoardMatrix& m, const std::function<bool(int)>& pred) {
  int n = 0;
  for (int v : m.cells()) n += pred(v);
  return n;
}
int row_count(const BoardMatrix& m, int r, const std::function<bool(int)>& pred) {
  int n = 0;
  for (int c = 0; c < m.cols(); ++c) n += pred(m.at(r, c));
  return n;
}
int col_count(const BoardMatrix& m, int c, const std::function<bool(int)>& pred) {
  int n = 0;
  for (int r = 0; r < m.rows(); ++r) n += pred(m.at(r, c));
  return n;
}
int edge_count(const BoardMatrix& m, const std::function<bool(int)>& pred) {
  int n = 0;
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (r == 0 || c == 0 || r == m.rows() - 1 || c == m.cols() - 1) n += pred(m.at(r, c));
    }
  }
  return n;
}
int neighbour_count(const BoardMatrix& m, int r, int c, const std::function<bool(int)>& pred) {
  int n = 0;
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      if ((dr || dc) && r + dr >= 0 && r + dr < m.rows() && c + dc >= 0 && c + dc < m.cols()) {
        n += pred(m.at(r + dr, c + dc));
      }
    }
  }
  return n;
}
/// Longest run of `v` along direction (dr, dc) starting anywhere.
int longest_run(const BoardMatrix& m, int v, int dr, int dc) {
  int best = 0;
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      const int pr = r - dr, pc = c - dc;
      if (pr >= 0 && pr < m.rows() && pc >= 0 && pc < m.cols() && m.at(pr, pc) == v) continue;
      int len = 0;
      for (int rr = r, cc = c; rr >= 0 && rr < m.rows() && cc >= 0 && cc < m.cols() && m.at(rr, cc) == v;
           rr += dr, cc += dc) {
        ++len;
      }
      best = std::max(best, len);
    }
  }
  return best;
}
int row_run(const BoardMatrix& m, int r, int v) {
  int best = 0, len = 0;
  for (int c = 0; c < m.cols(); ++c) {
    len = m.at(r, c) == v ? len + 1 : 0;
    best = std::max(best, len);
  }
  return best;
}

auto eq(int v) {
  return [v](int x) { return x == v; };
}

int draw_int(Rng& rng, int lo, int hi) { return rng.uniform_int(lo, hi); }

Params draw_cell(const BoardMatrix& m, Rng& rng) {
  return {{"row", draw_int(rng, 0, m.rows() - 1)}, {"col", draw_int(rng, 0, m.cols() - 1)}};
}

/// Uniform cell among those satisfying `pred`; nullopt if none does.
std::optional<Params> draw_cell_where(const BoardMatrix& m, Rng& rng, const std::function<bool(int)>& pred) {
  std::vector<int> idx;
  for (int i = 0; i < static_cast<int>(m.cells().size()); ++i) {
    if (pred(m.cells()[static_cast<size_t>(i)])) idx.push_back(i);
  }
  if (idx.empty()) return std::nullopt;
  const int i = idx[static_cast<size_t>(rng.below(idx.size()))];
  return Params{{"row", i / m.cols()}, {"col", i % m.cols()}};
}

const std::vector<std::string> kColorNames{"", "Black", "White"};  // stone values 1 and 2

std::string stone_text(int v) { return v == 0 ? "Empty" : kColorNames[static_cast<size_t>(v)]; }

std::string majority(int a, int b, const std::string& a_name, const std::string& b_name) {
  return a > b ? a_name : b > a ? b_name : "Equal";
}

// --- Tic Tac Toe: -1 empty, 0 O (red), 1 X (blue)

std::string ttt_symbol(int v) { return v == 0 ? "O" : v == 1 ? "X" : "Empty"; }
std::string ttt_color(int v) { return v == 0 ? "red" : "blue"; }

int ttt_winner(const BoardMatrix& m) {
  static constexpr int lines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6},
                                      {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {2, 4, 6}};
  bool wins[2] = {false, false};
  const auto cells = m.cells();
  for (const auto& l : lines) {
    const int v = cells[static_cast<size_t>(l[0])];
    if (v >= 0 && v == cells[static_cast<size_t>(l[1])] && v == cells[static_cast<size_t>(l[2])]) wins[v] = true;
  }
  if (wins[0] == wins[1]) return -1;
  return wins[0] ? 0 : 1;
}

std::vector<Family> ttt_families() {
  const GameKind k = GameKind::TicTacToe;
  auto sym = [](Rng& rng) { return draw_int(rng, 0, 1); };
  return {
      {"symbol_at", [](const BoardMatrix& m, Rng& rng) { return draw_cell(m, rng); },
       [k](const Params& p) {
         return "What is the symbol in row " + row_label(k, p.at("row")) + ", column " + col_label(k, p.at("col")) + "?";
       },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return categorical(ttt_symbol(m.at(p.at("row"), p.at("col"))), {"X", "O", "Empty"});
       }},
      {"count_symbol", [sym](const BoardMatrix&, Rng& rng) { return Params{{"symbol", sym(rng)}}; },
       [](const Params& p) { return "How many '" + ttt_symbol(p.at("symbol")) + "'s are present on the board?"; },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(count_if(m, eq(p.at("symbol"))), 0, 9);
       }},
      {"count_empty", [](const BoardMatrix&, Rng&) { return Params{}; },
       [](const Params&) { return std::string("How many empty cells are there?"); },
       [](const BoardMatrix& m, const Params&) -> std::optional<Answer> { return numeric(count_if(m, eq(-1)), 0, 9); }},
      {"count_symbol_row",
       [sym](const BoardMatrix&, Rng& rng) { return Params{{"symbol", sym(rng)}, {"row", draw_int(rng, 0, 2)}}; },
       [k](const Params& p) {
         return "How many '" + ttt_symbol(p.at("symbol")) + "'s are there in row " + row_label(k, p.at("row")) + "?";
       },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(row_count(m, p.at("row"), eq(p.at("symbol"))), 0, 3);
       }},
      {"count_symbol_col",
       [sym](const BoardMatrix&, Rng& rng) { return Params{{"symbol", sym(rng)}, {"col", draw_int(rng, 0, 2)}}; },
       [k](const Params& p) {
         return "How many '" + ttt_symbol(p.at("symbol")) + "'s are there in column " + col_label(k, p.at("col")) +
                "?";
       },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(col_count(m, p.at("col"), eq(p.at("symbol"))), 0, 3);
       }},
      {"winner", [](const BoardMatrix&, Rng&) { return Params{}; },
       [](const Params&) { return std::string("Did X or O win the game?"); },
       [](const BoardMatrix& m, const Params&) -> std::optional<Answer> {
         const int w = ttt_winner(m);
         if (w < 0) return std::nullopt;
         return categorical(ttt_symbol(w), {"X", "O"});
       }},
      {"count_color", [sym](const BoardMatrix&, Rng& rng) { return Params{{"color", sym(rng)}}; },
       [](const Params& p) { return "How many " + ttt_color(p.at("color")) + " marks are present on the board?"; },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(count_if(m, eq(p.at("color"))), 0, 9);
       }},
      {"count_color_row",
       [sym](const BoardMatrix&, Rng& rng) { return Params{{"color", sym(rng)}, {"row", draw_int(rng, 0, 2)}}; },
       [k](const Params& p) {
         return "How many " + ttt_color(p.at("color")) + " marks are there in row " + row_label(k, p.at("row")) + "?";
       },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(row_count(m, p.at("row"), eq(p.at("color"))), 0, 3);
       }},
      {"count_color_col",
       [sym](const BoardMatrix&, Rng& rng) { return Params{{"color", sym(rng)}, {"col", draw_int(rng, 0, 2)}}; },
       [k](const Params& p) {
         return "How many " + ttt_color(p.at("color")) + " marks are there in column " + col_label(k, p.at("col")) +
                "?";
       },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(col_count(m, p.at("col"), eq(p.at("color"))), 0, 3);
       }},
  };
}

// --- Gomoku: 0 empty, 1 black, 2 white

std::vector<Family> gomoku_families() {
  const GameKind k = GameKind::Gomoku;
  auto color = [](Rng& rng) { return draw_int(rng, 1, 2); };
  auto pos = [k](const Params& p) { return "row " + row_label(k, p.at("row")) + ", column " + col_label(k, p.at("col")); };
  return {
      {"stone_at", [](const BoardMatrix& m, Rng& rng) { return draw_cell(m, rng); },
       [pos](const Params& p) { return "What is the stone at " + pos(p) + "?"; },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return categorical(stone_text(m.at(p.at("row"), p.at("col"))), {"Empty", "Black", "White"});
       }},
      {"count_color", [color](const BoardMatrix&, Rng& rng) { return Params{{"color", color(rng)}}; },
       [](const Params& p) {
         return "How many '" + kColorNames[static_cast<size_t>(p.at("color"))] + "' stones are on the board?";
       },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(count_if(m, eq(p.at("color"))), 0, 225);
       }},
      {"count_color_row",
       [color](const BoardMatrix&, Rng& rng) { return Params{{"color", color(rng)}, {"row", draw_int(rng, 0, 14)}}; },
       [k](const Params& p) {
         return "How many '" + kColorNames[static_cast<size_t>(p.at("color"))] + "' stones are in row " +
                row_label(k, p.at("row")) + "?";
       },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(row_count(m, p.at("row"), eq(p.at("color"))), 0, 15);
       }},
      {"count_color_col",
       [color](const BoardMatrix&, Rng& rng) { return Params{{"color", color(rng)}, {"col", draw_int(rng, 0, 14)}}; },
       [k](const Params& p) {
         return "How many '" + kColorNames[static_cast<size_t>(p.at("color"))] + "' stones are in column " +
                col_label(k, p.at("col")) + "?";
       },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(col_count(m, p.at("col"), eq(p.at("color"))), 0, 15);
       }},
      {"winning_line", [](const BoardMatrix&, Rng&) { return Params{}; },
       [](const Params&) { return std::string("Is there a winning line on the board?"); },
       [](const BoardMatrix& m, const Params&) -> std::optional<Answer> {
         bool win = false;
         for (int v = 1; v <= 2; ++v) {
           win = win || longest_run(m, v, 0, 1) >= 5 || longest_run(m, v, 1, 0) >= 5 ||
                 longest_run(m, v, 1, 1) >= 5 || longest_run(m, v, 1, -1) >= 5;
         }
         return yes_no(win);
       }},
      {"adjacent_stones", [](const BoardMatrix& m, Rng& rng) { return draw_cell(m, rng); },
       [pos](const Params& p) { return "How many adjacent stones are around " + pos(p) + "?"; },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(neighbour_count(m, p.at("row"), p.at("col"), [](int v) { return v != 0; }), 0, 8);
       }},
      {"count_empty", [](const BoardMatrix&, Rng&) { return Params{}; },
       [](const Params&) { return std::string("How many empty cells are there on the board?"); },
       [](const BoardMatrix& m, const Params&) -> std::optional<Answer> { return numeric(count_if(m, eq(0)), 0, 225); }},
      {"max_run_row",
       [color](const BoardMatrix&, Rng& rng) { return Params{{"color", color(rng)}, {"row", draw_int(rng, 0, 14)}}; },
       [k](const Params& p) {
         return "What is the maximum number of consecutive '" + kColorNames[static_cast<size_t>(p.at("color"))] +
                "' stones in row " + row_label(k, p.at("row")) + "?";
       },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(row_run(m, p.at("row"), p.at("color")), 0, 15);
       }},
      {"max_run_diagonal", [color](const BoardMatrix&, Rng& rng) { return Params{{"color", color(rng)}}; },
       [](const Params& p) {
         return "What is the maximum number of consecutive '" + kColorNames[static_cast<size_t>(p.at("color"))] +
                "' stones on any diagonal?";
       },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         const int v = p.at("color");
         return numeric(std::max(longest_run(m, v, 1, 1), longest_run(m, v, 1, -1)), 0, 15);
       }},
      {"edge_stones", [color](const BoardMatrix&, Rng& rng) { return Params{{"color", color(rng)}}; },
       [](const Params& p) {
         return "How many '" + kColorNames[static_cast<size_t>(p.at("color"))] + "' stones are on the edge of the board?";
       },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(edge_count(m, eq(p.at("color"))), 0, 56);
       }},
  };
}

// --- Minesweeper: -1 unrevealed, 0-8 counts, 9 revealed mine

std::string mine_text(int v) { return v == 9 ? "Mine" : std::to_string(v); }

std::vector<Family> minesweeper_families() {
  const GameKind k = GameKind::Minesweeper;
  auto pos = [k](const Params& p) { return "row " + row_label(k, p.at("row")) + ", column " + col_label(k, p.at("col")); };
  auto revealed = [](int v) { return v != -1; };
  return {
      {"revealed_at", [revealed](const BoardMatrix& m, Rng& rng) { return draw_cell_where(m, rng, revealed); },
       [pos](const Params& p) { return "What is the revealed number or symbol in " + pos(p) + "?"; },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         const int v = m.at(p.at("row"), p.at("col"));
         if (v == -1) return std::nullopt;
         std::vector<std::string> space;
         for (int i = 0; i <= 9; ++i) space.push_back(mine_text(i));
         return categorical(mine_text(v), space);
       }},
      {"count_revealed_mines", [](const BoardMatrix&, Rng&) { return Params{}; },
       [](const Params&) { return std::string("How many revealed mines are there on the board?"); },
       [](const BoardMatrix& m, const Params&) -> std::optional<Answer> { return numeric(count_if(m, eq(9)), 0, 64); }},
      {"count_revealed", [](const BoardMatrix&, Rng&) { return Params{}; },
       [](const Params&) { return std::string("How many revealed cells are there on the board?"); },
       [revealed](const BoardMatrix& m, const Params&) -> std::optional<Answer> {
         return numeric(count_if(m, revealed), 0, 64);
       }},
      {"count_revealed_row", [](const BoardMatrix&, Rng& rng) { return Params{{"row", draw_int(rng, 0, 7)}}; },
       [k](const Params& p) { return "How many revealed cells are there in row " + row_label(k, p.at("row")) + "?"; },
       [revealed](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(row_count(m, p.at("row"), revealed), 0, 8);
       }},
      {"count_revealed_col", [](const BoardMatrix&, Rng& rng) { return Params{{"col", draw_int(rng, 0, 7)}}; },
       [k](const Params& p) { return "How many revealed cells are there in column " + col_label(k, p.at("col")) + "?"; },
       [revealed](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(col_count(m, p.at("col"), revealed), 0, 8);
       }},
      {"adjacent_mines", [](const BoardMatrix& m, Rng& rng) { return draw_cell(m, rng); },
       [pos](const Params& p) { return "How many mines are adjacent to the cell at " + pos(p) + "?"; },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(neighbour_count(m, p.at("row"), p.at("col"), eq(9)), 0, 8);
       }},
      {"mine_at", [](const BoardMatrix& m, Rng& rng) { return draw_cell(m, rng); },
       [pos](const Params& p) { return "Is there a revealed mine at " + pos(p) + "?"; },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return yes_no(m.at(p.at("row"), p.at("col")) == 9);
       }},
  };
}

// --- Reversi: 0 empty, 1 black, 2 white

std::vector<Family> reversi_families() {
  const GameKind k = GameKind::Reversi;
  auto color = [](Rng& rng) { return draw_int(rng, 1, 2); };
  auto name = [](const Params& p) { return kColorNames[static_cast<size_t>(p.at("color"))]; };
  auto occupied = [](int v) { return v != 0; };
  return {
      {"symbol_at", [](const BoardMatrix& m, Rng& rng) { return draw_cell(m, rng); },
       [k](const Params& p) {
         return "What is the symbol in row " + row_label(k, p.at("row")) + ", column " + col_label(k, p.at("col")) + "?";
       },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return categorical(stone_text(m.at(p.at("row"), p.at("col"))), {"Empty", "Black", "White"});
       }},
      {"count_color", [color](const BoardMatrix&, Rng& rng) { return Params{{"color", color(rng)}}; },
       [name](const Params& p) { return "How many '" + name(p) + "' pieces are present on the board?"; },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(count_if(m, eq(p.at("color"))), 0, 64);
       }},
      {"count_empty", [](const BoardMatrix&, Rng&) { return Params{}; },
       [](const Params&) { return std::string("How many empty cells are there on the board?"); },
       [](const BoardMatrix& m, const Params&) -> std::optional<Answer> { return numeric(count_if(m, eq(0)), 0, 64); }},
      {"count_color_row",
       [color](const BoardMatrix&, Rng& rng) { return Params{{"color", color(rng)}, {"row", draw_int(rng, 0, 7)}}; },
       [k, name](const Params& p) {
         return "How many '" + name(p) + "' pieces are there in row " + row_label(k, p.at("row")) + "?";
       },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(row_count(m, p.at("row"), eq(p.at("color"))), 0, 8);
       }},
      {"count_color_col",
       [color](const BoardMatrix&, Rng& rng) { return Params{{"color", color(rng)}, {"col", draw_int(rng, 0, 7)}}; },
       [k, name](const Params& p) {
         return "How many '" + name(p) + "' pieces are there in column " + col_label(k, p.at("col")) + "?";
       },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(col_count(m, p.at("col"), eq(p.at("color"))), 0, 8);
       }},
      {"row_most", [color](const BoardMatrix&, Rng& rng) { return Params{{"color", color(rng)}}; },
       [name](const Params& p) { return "Which row contains the most '" + name(p) + "' pieces?"; },
       [k](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         int best = -1, best_row = -1;
         bool tied = false;
         for (int r = 0; r < 8; ++r) {
           const int n = row_count(m, r, eq(p.at("color")));
           if (n > best) {
             best = n;
             best_row = r;
             tied = false;
           } else if (n == best) {
             tied = true;
           }
         }
         if (tied || best <= 0) return std::nullopt;
         std::vector<std::string> space;
         for (int r = 0; r < 8; ++r) space.push_back(row_label(k, r));
         return categorical(row_label(k, best_row), space);
       }},
      {"majority", [](const BoardMatrix&, Rng&) { return Params{}; },
       [](const Params&) { return std::string("Which player has more pieces on the board, 'Black' or 'White'?"); },
       [](const BoardMatrix& m, const Params&) -> std::optional<Answer> {
         return categorical(majority(count_if(m, eq(1)), count_if(m, eq(2)), "Black", "White"),
                            {"Black", "White", "Equal"});
       }},
      {"total_row", [](const BoardMatrix&, Rng& rng) { return Params{{"row", draw_int(rng, 0, 7)}}; },
       [k](const Params& p) { return "How many pieces are there in total in row " + row_label(k, p.at("row")) + "?"; },
       [occupied](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(row_count(m, p.at("row"), occupied), 0, 8);
       }},
      {"total_col", [](const BoardMatrix&, Rng& rng) { return Params{{"col", draw_int(rng, 0, 7)}}; },
       [k](const Params& p) { return "How many pieces are there in total in column " + col_label(k, p.at("col")) + "?"; },
       [occupied](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(col_count(m, p.at("col"), occupied), 0, 8);
       }},
      {"total_color", [color](const BoardMatrix&, Rng& rng) { return Params{{"color", color(rng)}}; },
       [name](const Params& p) { return "How many '" + name(p) + "' pieces are there in total on the board?"; },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(count_if(m, eq(p.at("color"))), 0, 64);
       }},
  };
}

// --- Sudoku: 0 empty, 1-9 digits

std::string subgrid_text(const Params& p) {
  const int b = p.at("box");
  return "the subgrid starting at row " + row_label(GameKind::Sudoku, 3 * (b / 3)) + ", column " +
         col_label(GameKind::Sudoku, 3 * (b % 3));
}

int subgrid_sum(const BoardMatrix& m, int box, const std::function<int(int)>& f) {
  int n = 0;
  for (int r = 3 * (box / 3); r < 3 * (box / 3) + 3; ++r) {
    for (int c = 3 * (box % 3); c < 3 * (box % 3) + 3; ++c) n += f(m.at(r, c));
  }
  return n;
}

std::vector<Family> sudoku_families() {
  const GameKind k = GameKind::Sudoku;
  auto digit = [](Rng& rng) { return draw_int(rng, 1, 9); };
  auto num = [](const Params& p) { return std::to_string(p.at("number")); };
  auto ident = [](int v) { return v; };
  std::vector<std::string> digits;
  for (int d = 1; d <= 9; ++d) digits.push_back(std::to_string(d));
  return {
      {"number_at", [](const BoardMatrix& m, Rng& rng) { return draw_cell_where(m, rng, [](int v) { return v != 0; }); },
       [k](const Params& p) {
         return "What is the number in row " + row_label(k, p.at("row")) + ", column " + col_label(k, p.at("col")) + "?";
       },
       [digits](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         const int v = m.at(p.at("row"), p.at("col"));
         if (v == 0) return std::nullopt;
         return categorical(std::to_string(v), digits);
       }},
      {"count_number", [digit](const BoardMatrix&, Rng& rng) { return Params{{"number", digit(rng)}}; },
       [num](const Params& p) { return "How many '" + num(p) + "'s are present on the board?"; },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(count_if(m, eq(p.at("number"))), 0, 81);
       }},
      {"count_empty", [](const BoardMatrix&, Rng&) { return Params{}; },
       [](const Params&) { return std::string("How many empty cells are there on the board?"); },
       [](const BoardMatrix& m, const Params&) -> std::optional<Answer> { return numeric(count_if(m, eq(0)), 0, 81); }},
      {"count_number_row",
       [digit](const BoardMatrix&, Rng& rng) { return Params{{"number", digit(rng)}, {"row", draw_int(rng, 0, 8)}}; },
       [k, num](const Params& p) {
         return "How many '" + num(p) + "'s are there in row " + row_label(k, p.at("row")) + "?";
       },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(row_count(m, p.at("row"), eq(p.at("number"))), 0, 9);
       }},
      {"count_number_col",
       [digit](const BoardMatrix&, Rng& rng) { return Params{{"number", digit(rng)}, {"col", draw_int(rng, 0, 8)}}; },
       [k, num](const Params& p) {
         return "How many '" + num(p) + "'s are there in column " + col_label(k, p.at("col")) + "?";
       },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(col_count(m, p.at("col"), eq(p.at("number"))), 0, 9);
       }},
      {"count_number_subgrid",
       [digit](const BoardMatrix&, Rng& rng) { return Params{{"number", digit(rng)}, {"box", draw_int(rng, 0, 8)}}; },
       [num](const Params& p) { return "How many '" + num(p) + "'s are there in " + subgrid_text(p) + "?"; },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         const int d = p.at("number");
         return numeric(subgrid_sum(m, p.at("box"), [d](int v) { return v == d ? 1 : 0; }), 0, 9);
       }},
      {"sum_row", [](const BoardMatrix&, Rng& rng) { return Params{{"row", draw_int(rng, 0, 8)}}; },
       [k](const Params& p) { return "What is the sum of numbers in row " + row_label(k, p.at("row")) + "?"; },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         int s = 0;
         for (int v : m.row(p.at("row"))) s += v;
         return numeric(s, 0, 81);
       }},
      {"sum_col", [](const BoardMatrix&, Rng& rng) { return Params{{"col", draw_int(rng, 0, 8)}}; },
       [k](const Params& p) { return "What is the sum of numbers in column " + col_label(k, p.at("col")) + "?"; },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         int s = 0;
         for (int r = 0; r < 9; ++r) s += m.at(r, p.at("col"));
         return numeric(s, 0, 81);
       }},
      {"sum_subgrid", [](const BoardMatrix&, Rng& rng) { return Params{{"box", draw_int(rng, 0, 8)}}; },
       [](const Params& p) { return "What is the sum of numbers in " + subgrid_text(p) + "?"; },
       [ident](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(subgrid_sum(m, p.at("box"), ident), 0, 81);
       }},
      {"row_contains",
       [digit](const BoardMatrix&, Rng& rng) { return Params{{"number", digit(rng)}, {"row", draw_int(rng, 0, 8)}}; },
       [k, num](const Params& p) {
         return "Does row " + row_label(k, p.at("row")) + " contain the number '" + num(p) + "'?";
       },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return yes_no(row_count(m, p.at("row"), eq(p.at("number"))) > 0);
       }},
      {"col_contains",
       [digit](const BoardMatrix&, Rng& rng) { return Params{{"number", digit(rng)}, {"col", draw_int(rng, 0, 8)}}; },
       [k, num](const Params& p) {
         return "Does column " + col_label(k, p.at("col")) + " contain the number '" + num(p) + "'?";
       },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return yes_no(col_count(m, p.at("col"), eq(p.at("number"))) > 0);
       }},
      {"empty_subgrid", [](const BoardMatrix&, Rng& rng) { return Params{{"box", draw_int(rng, 0, 8)}}; },
       [](const Params& p) { return "How many empty cells are there in " + subgrid_text(p) + "?"; },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(subgrid_sum(m, p.at("box"), [](int v) { return v == 0 ? 1 : 0; }), 0, 9);
       }},
  };
}

// --- Chess: white 1..6, black -1..-6, 0 empty; row 0 is rank 8

const std::vector<std::string> kPieceNames{"", "pawn", "knight", "bishop", "rook", "queen", "king"};

std::string capitalized(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

std::vector<Family> chess_families() {
  const GameKind k = GameKind::Chess;
  auto pos = [k](const Params& p) { return "column " + col_label(k, p.at("col")) + ", row " + row_label(k, p.at("row")); };
  auto occupied = [](int v) { return v != 0; };
  std::vector<std::string> names;
  for (int t = 1; t <= 6; ++t) names.push_back(capitalized(kPieceNames[static_cast<size_t>(t)]));
  return {
      {"color_at", [occupied](const BoardMatrix& m, Rng& rng) { return draw_cell_where(m, rng, occupied); },
       [pos](const Params& p) { return "What is the color of the piece at " + pos(p) + "?"; },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         const int v = m.at(p.at("row"), p.at("col"));
         if (v == 0) return std::nullopt;
         return categorical(v > 0 ? "White" : "Black", {"White", "Black"});
       }},
      {"piece_at", [occupied](const BoardMatrix& m, Rng& rng) { return draw_cell_where(m, rng, occupied); },
       [pos](const Params& p) { return "What is the piece at " + pos(p) + "?"; },
       [names](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         const int v = m.at(p.at("row"), p.at("col"));
         if (v == 0) return std::nullopt;
         return categorical(names[static_cast<size_t>(std::abs(v) - 1)], names);
       }},
      {"count_piece",
       [](const BoardMatrix&, Rng& rng) { return Params{{"color", draw_int(rng, 0, 1)}, {"piece", draw_int(rng, 1, 6)}}; },
       [](const Params& p) {
         return std::string("How many ") + (p.at("color") == 0 ? "white " : "black ") +
                kPieceNames[static_cast<size_t>(p.at("piece"))] + "s are on the board?";
       },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         const int v = p.at("color") == 0 ? p.at("piece") : -p.at("piece");
         return numeric(count_if(m, eq(v)), 0, 64);
       }},
      {"count_row", [](const BoardMatrix&, Rng& rng) { return Params{{"row", draw_int(rng, 0, 7)}}; },
       [k](const Params& p) { return "How many pieces are in row " + row_label(k, p.at("row")) + "?"; },
       [occupied](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(row_count(m, p.at("row"), occupied), 0, 8);
       }},
      {"count_col", [](const BoardMatrix&, Rng& rng) { return Params{{"col", draw_int(rng, 0, 7)}}; },
       [k](const Params& p) { return "How many pieces are in column " + col_label(k, p.at("col")) + "?"; },
       [occupied](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         return numeric(col_count(m, p.at("col"), occupied), 0, 8);
       }},
      {"color_majority", [](const BoardMatrix&, Rng&) { return Params{}; },
       [](const Params&) { return std::string("Which color has more pieces, white or black?"); },
       [](const BoardMatrix& m, const Params&) -> std::optional<Answer> {
         return categorical(majority(count_if(m, [](int v) { return v > 0; }), count_if(m, [](int v) { return v < 0; }),
                                     "White", "Black"),
                            {"White", "Black", "Equal"});
       }},
      {"type_comparison",
       [](const BoardMatrix&, Rng& rng) {
         const int a = draw_int(rng, 1, 6);
         int b = draw_int(rng, 1, 5);
         if (b >= a) ++b;
         return Params{{"piece1", a}, {"piece2", b}};
       },
       [](const Params& p) {
         return "Which has more, " + kPieceNames[static_cast<size_t>(p.at("piece1"))] + "s or " +
                kPieceNames[static_cast<size_t>(p.at("piece2"))] + "s?";
       },
       [](const BoardMatrix& m, const Params& p) -> std::optional<Answer> {
         const int a = p.at("piece1"), b = p.at("piece2");
         const std::string an = capitalized(kPieceNames[static_cast<size_t>(a)]) + "s";
         const std::string bn = capitalized(kPieceNames[static_cast<size_t>(b)]) + "s";
         const int na = count_if(m, [a](int v) { return std::abs(v) == a; });
         const int nb = count_if(m, [b](int v) { return std::abs(v) == b; });
         return categorical(majority(na, nb, an, bn), {an, bn, "Equal"});
       }},
      {"edge_pieces", [](const BoardMatrix&, Rng&) { return Params{}; },
       [](const Params&) { return std::string("How many pieces are on the edge of the board?"); },
       [occupied](const BoardMatrix& m, const Params&) -> std::optional<Answer> {
         return numeric(edge_count(m, occupied), 0, 28);
       }},
      {"empty_half", [](const BoardMatrix&, Rng&) { return Params{}; },
       [](const Params&) { return std::string("Which half of the board has more empty cells, top or bottom?"); },
       [](const BoardMatrix& m, const Params&) -> std::optional<Answer> {
         int top = 0, bottom = 0;
         for (int r = 0; r < 8; ++r) (r < 4 ? top : bottom) += row_count(m, r, eq(0));
         return categorical(majority(top, bottom, "Top", "Bottom"), {"Top", "Bottom", "Equal"});
       }},
  };
}

const std::vector<Family>& families(GameKind kind) {
  static const std::vector<Family> ttt = ttt_families();
  static const std::vector<Family> gomoku = gomoku_families();
  static const std::vector<Family> mines = minesweeper_families();
  static const std::vector<Family> reversi = reversi_families();
  static const std::vector<Family> sudoku = sudoku_families();
  static const std::vector<Family> chess = chess_families();
  switch (kind) {
    case GameKind::TicTacToe: return ttt;
    case GameKind::Gomoku: return gomoku;
    case GameKind::Minesweeper: return mines;
    case GameKind::Reversi: return reversi;
    case GameKind::Sudoku: return sudoku;
    case GameKind::Chess: return chess;
  }
  return ttt;
}

const Family* find_family(GameKind kind, const std::string& tag) {
  for (const auto& f : families(kind)) {
    if (f.tag == tag) return &f;
  }
  return nullptr;
}

std::vector<std::string> option_texts(const Answer& a, Rng& rng) {
  std::vector<std::string> distractors;
  size_t want = 3;
  if (a.numeric) {
    std::vector<int> near;
    for (int d = 1; d <= 3; ++d) {
      for (int v : {a.value - d, a.value + d}) {
        if (v >= a.lo && v <= a.hi) near.push_back(v);
      }
    }
    rng.shuffle(std::span<int>(near));
    want = std::min<size_t>(3, static_cast<size_t>(a.hi - a.lo));
    for (int v : near) {
      if (distractors.size() < want) distractors.push_back(std::to_string(v));
    }
    // narrow ranges near a bound: widen outward until full
    for (int d = 4; distractors.size() < want; ++d) {
      for (int v : {a.value - d, a.value + d}) {
        if (v >= a.lo && v <= a.hi && distractors.size() < want) distractors.push_back(std::to_string(v));
      }
    }
  } else {
    for (const auto& s : a.space) {
      if (s != a.text) distractors.push_back(s);
    }
    rng.shuffle(std::span<std::string>(distractors));
    want = std::min<size_t>(3, distractors.size());
    distractors.resize(want);
  }
  distractors.push_back(a.text);
  rng.shuffle(std::span<std::string>(distractors));
  return distractors;
}

}  // namespace

std::vector<std::string> qa_families(GameKind kind) {
  std::vector<std::string> tags;
  for (const auto& f : families(kind)) tags.push_back(f.tag);
  return tags;
}

std::optional<QAItem> instantiate_family(const BoardMatrix& m, const std::string& family, Rng& rng) {
  const Family* f = find_family(m.kind(), family);
  if (!f) throw Error(ErrorCode::InvalidArgument, "unknown question family: " + family);
  auto params = f->draw(m, rng);
  if (!params) return std::nullopt;
  auto answer = f->answer(m, *params);
  if (!answer) return std::nullopt;
  QAItem item;
  item.family = f->tag;
  item.question = f->question(*params);
  item.params = *params;
  const auto texts = option_texts(*answer, rng);
  for (size_t i = 0; i < texts.size(); ++i) {
    const char letter = static_cast<char>('A' + i);
    item.options.push_back({letter, texts[i]});
    if (texts[i] == answer->text) item.correct = letter;
  }
  return item;
}

QAItem generate_qa_item(const BoardMatrix& m, Rng& rng) {
  const auto& fams = families(m.kind());
  for (int attempt = 0; attempt <= kMaxFamilyRetries; ++attempt) {
    const auto& f = fams[static_cast<size_t>(rng.below(fams.size()))];
    if (auto item = instantiate_family(m, f.tag, rng)) return *item;
  }
  throw Error(ErrorCode::GenerationExhausted, "no applicable question family for this state");
}

std::optional<std::string> qa_recompute(const BoardMatrix& m, const std::string& family, const Params& params) {
  const Family* f = find_family(m.kind(), family);
  if (!f) return std::nullopt;
  auto a = f->answer(m, params);
  if (!a) return std::nullopt;
  return a->text;
}

bool qa_verify(const QATruth& truth) {
  const QAItem& item = truth.item;
  std::set<std::string> texts;
  int correct = 0;
  for (size_t i = 0; i < item.options.size(); ++i) {
    if (item.options[i].letter != static_cast<char>('A' + i)) return false;
    texts.insert(item.options[i].text);
    correct += item.options[i].letter == item.correct;
  }
  if (texts.size() != item.options.size() || correct != 1 || item.options.size() < 2) return false;
  const auto answer = qa_recompute(truth.matrix, item.family, item.params);
  return answer && *answer == item.correct_option().text;
}

// ---------------------------------------------------------------------------
// Sample builders

Sample make_perceiving_sample(GameKind kind, Seed seed, const GenProfile& profile, const Theme& theme,
                         bool render) {
  Sample s;
  s.kind = kind;
  s.task = TaskKind::Perceiving;
  s.seed = seed;
  s.profile = profile;
  BoardMatrix m = random_perception_state(profile, seed);
  if (render) s.image = render_board(m, theme);
  s.prompt = std::string(task_prompt(kind, TaskKind::Perceiving));
  s.ground_truth = std::move(m);
  return s;
}

Sample make_qa_sample(GameKind kind, Seed seed, const GenProfile& profile, const Theme& theme,
                         bool render) {
  Sample s;
  s.kind = kind;
  s.task = TaskKind::QA;
  s.seed = seed;
  s.profile = profile;
  BoardMatrix m = random_perception_state(profile, seed);
  Rng rng(derive_seed(seed, "qa"));
  QAItem item = generate_qa_item(m, rng);
  if (render) s.image = render_board(m, theme);
  s.prompt = qa_prompt(kind, item.block());
  s.ground_truth = QATruth{std::move(item), std::move(m)};
  return s;
}

Sample make_rule_sample(GameKind kind, Seed seed, const GenProfile& profile, const Theme& theme,
                         bool render) {
  Sample s;
  s.kind = kind;
  s.task = TaskKind::RuleFollowing;
  s.seed = seed;
  s.profile = profile;
  GameState st = random_legal_state(profile, seed);
  if (render) s.image = render_board(st, theme);
  s.prompt = std::string(task_prompt(kind, TaskKind::RuleFollowing));
  s.ground_truth = std::move(st);
  return s;
}

Sample make_sample(GameKind kind, TaskKind task, Seed run_seed, std::uint64_t index, const GenProfile& profile,
                   const Theme& theme, bool render) {
  const Seed seed = sample_seed(run_seed, kind, task, index);
  Sample s;
  switch (task) {
    case TaskKind::Perceiving: s = make_perceiving_sample(kind, seed, profile, theme, render); break;
    case TaskKind::QA: s = make_qa_sample(kind, seed, profile, theme, render); break;
    case TaskKind::RuleFollowing: s = make_rule_sample(kind, seed, profile, theme, render); break;
    case TaskKind::E2E: throw Error(ErrorCode::InvalidArgument, "e2e has no offline samples");
  }
  s.id = sample_id(kind, task, index);
  return s;
}

GameState rule_state(const Sample& s) { return random_legal_state(s.profile, s.seed); }

// ---------------------------------------------------------------------------
// End-to-end play

bool is_competitive(GameKind kind) { return kind != GameKind::Sudoku && kind != GameKind::Minesweeper; }

E2ESessionLog run_e2e_session(GameKind kind, Seed seed, ModelAdapter& agent, const SessionOptions& opts) {
  E2ESessionLog log;
  log.kind = kind;
  log.seed = seed;
  GameState s = initial_state(kind, seed);
  const std::string base_prompt(task_prompt(kind, TaskKind::E2E));
  bool notice = false;
  int turn = 0;
  while (!terminal_status(s).terminal()) {
    if (is_competitive(kind) && s.side_to_move() == Side::Second) {
      const MoveSpec reply = opponent_move(s, opts.opponent, &log.warnings);
      s = apply_move(s, reply);
      if (!log.transcript.empty()) log.transcript.back().opponent_reply = move_to_text(reply);
      continue;
    }
    E2ETurn t;
    t.turn = turn;
    const auto png = render_board(s, opts.theme);
    t.image_sha256 = sha256_hex(png);
    t.prompt = notice ? base_prompt + "\n" + std::string(invalid_move_notice()) : base_prompt;
    QueryContext ctx;
    ctx.kind = kind;
    ctx.task = TaskKind::E2E;
    ctx.key = opts.key_prefix + "/turn-" + std::to_string(turn);
    ctx.state = &s;
    const auto start = std::chrono::steady_clock::now();
    try {
      t.raw = agent.send(t.prompt, png, ctx);
    } catch (const Error& e) {
      log.aborted = true;
      log.abort_reason = std::string(error_code_name(e.code())) + ": " + e.what();
      break;
    }
    t.latency_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const ParsedResponse parsed = parse_move(t.raw, kind, true);
    bool strike = true;
    if (!parsed.ok()) {
      t.error = parsed.error;
    } else {
      t.move = move_to_text(parsed.move());
      if (is_legal(s, parsed.move())) {
        s = apply_move(s, parsed.move());
        t.valid = true;
        strike = false;
        ++log.model_moves;
      } else {
        t.error = "illegal move";
      }
    }
    log.transcript.push_back(std::move(t));
    ++turn;
    notice = strike;
    if (strike && ++log.invalid_count >= kMaxStrikes) {
      log.struck_out = true;
      break;
    }
  }
  log.outcome = log.struck_out ? Outcome::loss(Side::First) : terminal_status(s);
  log.final_state = s;
  if (!log.aborted) log.score = score_e2e(log);
  return log;
}

namespace {

MoveSpec move_from_text(GameKind kind, const std::string& text) {
  const ParsedResponse p = parse_move("Movement: " + text, kind);
  if (!p.ok()) throw Error(ErrorCode::Unparseable, "logged move '" + text + "' does not parse");
  return p.move();
}

}  // namespace

GameState replay_session(const E2ESessionLog& log) {
  GameState s = initial_state(log.kind, log.seed);
  for (const auto& t : log.transcript) {
    if (t.valid && t.move) s = apply_move(s, move_from_text(log.kind, *t.move));
    if (t.opponent_reply) s = apply_move(s, move_from_text(log.kind, *t.opponent_reply));
  }
  return s;
}

}  // namespace boardeval
