#include "boardeval/engines.hpp"

#include <algorithm>
#include <deque>

#include "boardeval/statesgen.hpp"

namespace boardeval {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr int kLineDirs[4][2] = {{0, 1}, {1, 0}, {1, 1}, {1, -1}};

int ttt_mark(Side s) { return s == Side::First ? 0 : 1; }
int stone(Side s) { return s == Side::First ? 1 : 2; }

[[noreturn]] void illegal(const GameState& s, const MoveSpec& m, const std::string& why) {
  throw Error(ErrorCode::IllegalMove, std::string(game_id(s.kind())) + ": illegal move '" +
                                          move_to_text(m) + "': " + why);
}

const CellCoord* cell_of(const MoveSpec& m) {
  if (auto* c = std::get_if<CellMove>(&m.payload)) return &c->cell;
  return nullptr;
}

// Tic Tac Toe -----------------------------------------------------------------

int ttt_winner_mark(const std::array<std::int8_t, 9>& b) {
  static constexpr int kLines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6},
                                       {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {2, 4, 6}};
  for (const auto& l : kLines) {
    if (b[l[0]] != -1 && b[l[0]] == b[l[1]] && b[l[1]] == b[l[2]]) return b[l[0]];
  }
  return -1;
}

Outcome ttt_status(const TicTacToeData& d) {
  const int w = ttt_winner_mark(d.cells);
  if (w == 0) return Outcome::win(Side::First);
  if (w == 1) return Outcome::win(Side::Second);
  if (std::none_of(d.cells.begin(), d.cells.end(), [](int v) { return v == -1; })) return Outcome::tie();
  return Outcome::ongoing();
}

// Gomoku ---------------------------------------------------------------------

Outcome gomoku_status(const GomokuData& d) {
  if (gomoku::longest_run(d.cells, 1) >= 5) return Outcome::win(Side::First);
  if (gomoku::longest_run(d.cells, 2) >= 5) return Outcome::win(Side::Second);
  if (std::none_of(d.cells.begin(), d.cells.end(), [](int v) { return v == 0; })) return Outcome::tie();
  return Outcome::ongoing();
}

// Reversi --------------------------------------------------------------------

Outcome reversi_status(const ReversiData& d) {
  if (reversi::has_move(d.cells, 1) || reversi::has_move(d.cells, 2)) return Outcome::ongoing();
  const int black = reversi::count(d.cells, 1), white = reversi::count(d.cells, 2);
  if (black > white) return Outcome::win(Side::First);
  if (white > black) return Outcome::win(Side::Second);
  return Outcome::tie();
}

// Sudoku ---------------------------------------------------------------------

bool sudoku_has_move(const SudokuData& d) {
  for (int i = 0; i < 81; ++i) {
    if (d.grid[i] != 0) continue;
    for (int digit = 1; digit <= 9; ++digit) {
      if (sudoku::placement_ok(d.grid, i, digit)) return true;
    }
  }
  return false;
}

Outcome sudoku_status(const SudokuData& d) {
  const bool full = std::none_of(d.grid.begin(), d.grid.end(), [](int v) { return v == 0; });
  if (full) return Outcome::win(Side::First);
  // Wrong-but-legal fills can paint the grid into a corner with no legal
  // placement left; that position is lost.
  if (!sudoku_has_move(d)) return Outcome::loss(Side::First);
  return Outcome::ongoing();
}

// Minesweeper ----------------------------------------------------------------

Outcome minesweeper_status(const MinesweeperData& d) {
  if (d.exploded) return Outcome::loss(Side::First);
  if ((d.revealed & ~d.mines).count() == 64 - d.mines.count()) return Outcome::win(Side::First);
  return Outcome::ongoing();
}

void flood_reveal(MinesweeperData& d, int start) {
  std::deque<int> queue{start};
  d.revealed.set(static_cast<size_t>(start));
  while (!queue.empty()) {
    const int idx = queue.front();
    queue.pop_front();
    if (minesweeper::adjacent_mines(d.mines, idx) != 0) continue;
    const int r = idx / 8, c = idx % 8;
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        const int rr = r + dr, cc = c + dc;
        if ((dr || dc) && rr >= 0 && rr < 8 && cc >= 0 && cc < 8) {
          const int n = rr * 8 + cc;
          if (!d.revealed[static_cast<size_t>(n)] && !d.mines[static_cast<size_t>(n)]) {
            d.revealed.set(static_cast<size_t>(n));
            queue.push_back(n);
          }
        }
      }
    }
  }
}

// Chess ----------------------------------------------------------------------

Outcome chess_status(const ChessData& d) {
  const auto& pos = d.position;
  if (pos.legal_moves().empty()) {
    if (pos.in_check()) return Outcome::win(pos.white_to_move() ? Side::Second : Side::First);
    return Outcome::tie();
  }
  if (pos.halfmove_clock() >= 100) return Outcome::tie();
  if (!d.history.empty() && std::count(d.history.begin(), d.history.end(), d.history.back()) >= 3) {
    return Outcome::tie();
  }
  if (pos.insufficient_material()) return Outcome::tie();
  return Outcome::ongoing();
}

}  // namespace

// ---------------------------------------------------------------------------

std::string move_to_text(const MoveSpec& m) {
  return std::visit(overloaded{
                        [&](const CellMove& c) {
                          return in_bounds(m.kind, c.cell) ? coord_to_label(m.kind, c.cell)
                                                           : std::string("?");
                        },
                        [&](const DigitMove& d) {
                          return (in_bounds(GameKind::Sudoku, d.cell)
                                      ? coord_to_label(GameKind::Sudoku, d.cell)
                                      : std::string("?")) +
                                 " " + std::to_string(d.digit);
                        },
                        [](const SanMove& s) { return s.san; },
                    },
                    m.payload);
}

std::string outcome_to_text(const Outcome& o) {
  const char* side = o.side == Side::First ? "first" : "second";
  switch (o.status) {
    case Outcome::Status::Ongoing: return "ongoing";
    case Outcome::Status::Win: return std::string("win:") + side;
    case Outcome::Status::Tie: return "tie";
    case Outcome::Status::Loss: return std::string("loss:") + side;
  }
  return "?";
}

GameState initial_state(GameKind kind, Seed seed) {
  switch (kind) {
    case GameKind::TicTacToe: {
      TicTacToeData d;
      d.cells.fill(-1);
      return GameState(kind, seed, d, Side::First);
    }
    case GameKind::Reversi: {
      ReversiData d;
      d.cells.fill(0);
      // D4 and E5 black, D5 and E4 white (row letter, column digit).
      d.cells[3 * 8 + 3] = 1;
      d.cells[4 * 8 + 4] = 1;
      d.cells[3 * 8 + 4] = 2;
      d.cells[4 * 8 + 3] = 2;
      return GameState(kind, seed, d, Side::First);
    }
    case GameKind::Gomoku: {
      GomokuData d;
      d.cells.fill(0);
      return GameState(kind, seed, d, Side::First);
    }
    case GameKind::Sudoku:
      return generate_sudoku_puzzle(seed, kDefaultSudokuClues);
    case GameKind::Minesweeper: {
      MinesweeperData d;
      d.mines = generate_mine_layout(seed);
      return GameState(kind, seed, d, Side::First);
    }
    case GameKind::Chess: {
      ChessData d;
      d.position = chess::Position::start();
      d.history.push_back(d.position.repetition_key());
      return GameState(kind, seed, d, Side::First);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown game kind");
}

Outcome terminal_status(const GameState& s) {
  return std::visit(overloaded{
                        [](const TicTacToeData& d) { return ttt_status(d); },
                        [](const ReversiData& d) { return reversi_status(d); },
                        [](const SudokuData& d) { return sudoku_status(d); },
                        [](const MinesweeperData& d) { return minesweeper_status(d); },
                        [](const GomokuData& d) { return gomoku_status(d); },
                        [](const ChessData& d) { return chess_status(d); },
                    },
                    s.data());
}

std::vector<MoveSpec> legal_moves(const GameState& s) {
  if (terminal_status(s).terminal()) {
    throw Error(ErrorCode::TerminalState, "legal_moves on a finished game");
  }
  std::vector<MoveSpec> out;
  const GameKind kind = s.kind();
  std::visit(overloaded{
                 [&](const TicTacToeData& d) {
                   for (int i = 0; i < 9; ++i)
                     if (d.cells[i] == -1) out.push_back(MoveSpec::cell(kind, {i / 3, i % 3}));
                 },
                 [&](const ReversiData& d) {
                   const int player = stone(s.side_to_move());
                   for (int i = 0; i < 64; ++i)
                     if (!reversi::flips(d.cells, i, player).empty())
                       out.push_back(MoveSpec::cell(kind, {i / 8, i % 8}));
                 },
                 [&](const SudokuData& d) {
                   for (int i = 0; i < 81; ++i) {
                     if (d.grid[i] != 0) continue;
                     for (int digit = 1; digit <= 9; ++digit)
                       if (sudoku::placement_ok(d.grid, i, digit))
                         out.push_back(MoveSpec::digit({i / 9, i % 9}, digit));
                   }
                 },
                 [&](const MinesweeperData& d) {
                   for (int i = 0; i < 64; ++i)
                     if (!d.revealed[static_cast<size_t>(i)])
                       out.push_back(MoveSpec::cell(kind, {i / 8, i % 8}));
                 },
                 [&](const GomokuData& d) {
                   for (int i = 0; i < 225; ++i)
                     if (d.cells[i] == 0) out.push_back(MoveSpec::cell(kind, {i / 15, i % 15}));
                 },
                 [&](const ChessData& d) {
                   for (const auto& m : d.position.legal_moves())
                     out.push_back(MoveSpec::chess(d.position.san(m)));
                 },
             },
             s.data());
  return out;
}

bool is_legal(const GameState& s, const MoveSpec& m) {
  try {
    (void)apply_move(s, m);
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IllegalMove || e.code() == ErrorCode::TerminalState) return false;
    throw;
  }
}

GameState with_side_to_move(GameState s, Side side) {
  s.side_to_move_ = side;
  return s;
}

GameState apply_move(const GameState& s, const MoveSpec& m) {
  if (m.kind != s.kind()) illegal(s, m, "move belongs to another game");
  if (terminal_status(s).terminal()) {
    throw Error(ErrorCode::TerminalState, "apply_move on a finished game");
  }
  GameState next = s;
  const Side mover = s.side_to_move();
  switch (s.kind()) {
    case GameKind::TicTacToe: {
      const CellCoord* c = cell_of(m);
      if (!c || !in_bounds(s.kind(), *c)) illegal(s, m, "not a board cell");
      auto d = s.as<TicTacToeData>();
      auto& cell = d.cells[static_cast<size_t>(c->row * 3 + c->col)];
      if (cell != -1) illegal(s, m, "cell occupied");
      cell = static_cast<std::int8_t>(ttt_mark(mover));
      next.data_ = d;
      next.side_to_move_ = other(mover);
      break;
    }
    case GameKind::Gomoku: {
      const CellCoord* c = cell_of(m);
      if (!c || !in_bounds(s.kind(), *c)) illegal(s, m, "not a board cell");
      auto d = s.as<GomokuData>();
      auto& cell = d.cells[static_cast<size_t>(c->row * 15 + c->col)];
      if (cell != 0) illegal(s, m, "intersection occupied");
      cell = static_cast<std::int8_t>(stone(mover));
      next.data_ = d;
      next.side_to_move_ = other(mover);
      break;
    }
    case GameKind::Reversi: {
      const CellCoord* c = cell_of(m);
      if (!c || !in_bounds(s.kind(), *c)) illegal(s, m, "not a board cell");
      auto d = s.as<ReversiData>();
      const int idx = c->row * 8 + c->col;
      const int player = stone(mover);
      const auto flipped = reversi::flips(d.cells, idx, player);
      if (flipped.empty()) illegal(s, m, "placement flips no disc");
      d.cells[static_cast<size_t>(idx)] = static_cast<std::int8_t>(player);
      for (int f : flipped) d.cells[static_cast<size_t>(f)] = static_cast<std::int8_t>(player);
      next.data_ = d;
      const int opponent = 3 - player;
      if (reversi::has_move(d.cells, opponent)) next.side_to_move_ = other(mover);
      else if (reversi::has_move(d.cells, player)) next.side_to_move_ = mover;  // opponent passes
      else next.side_to_move_ = other(mover);
      break;
    }
    case GameKind::Sudoku: {
      const auto* dm = std::get_if<DigitMove>(&m.payload);
      if (!dm || !in_bounds(s.kind(), dm->cell) || dm->digit < 1 || dm->digit > 9)
        illegal(s, m, "expected a cell and a digit 1-9");
      auto d = s.as<SudokuData>();
      const int idx = dm->cell.row * 9 + dm->cell.col;
      if (d.clues[static_cast<size_t>(idx)]) illegal(s, m, "cannot overwrite a clue");
      if (d.grid[static_cast<size_t>(idx)] != 0) illegal(s, m, "cell already filled");
      if (!sudoku::placement_ok(d.grid, idx, dm->digit)) illegal(s, m, "digit conflicts with row, column or box");
      d.grid[static_cast<size_t>(idx)] = static_cast<std::int8_t>(dm->digit);
      next.data_ = d;
      break;
    }
    case GameKind::Minesweeper: {
      const CellCoord* c = cell_of(m);
      if (!c || !in_bounds(s.kind(), *c)) illegal(s, m, "not a board cell");
      auto d = s.as<MinesweeperData>();
      const int idx = c->row * 8 + c->col;
      if (d.revealed[static_cast<size_t>(idx)]) illegal(s, m, "cell already revealed");
      if (d.mines[static_cast<size_t>(idx)]) {
        d.revealed.set(static_cast<size_t>(idx));
        d.exploded = true;
      } else {
        flood_reveal(d, idx);
      }
      next.data_ = d;
      break;
    }
    case GameKind::Chess: {
      const auto* sm = std::get_if<SanMove>(&m.payload);
      if (!sm) illegal(s, m, "expected SAN");
      auto d = s.as<ChessData>();
      const auto move = d.position.parse_san(sm->san);
      if (!move) illegal(s, m, "not a legal SAN move in this position");
      int captured = d.position.piece(move->to);
      if (move->flags & chess::kEnPassant) captured = d.position.white_to_move() ? -chess::Pawn : chess::Pawn;
      const bool irreversible = captured != 0 || std::abs(d.position.piece(move->from)) == chess::Pawn;
      if (captured < 0) d.captured_black_value += chess::material_value(captured);
      if (captured > 0) d.captured_white_value += chess::material_value(captured);
      const std::string canonical = d.position.san(*move);
      d.position.make(*move);
      if (irreversible) d.history.clear();
      d.history.push_back(d.position.repetition_key());
      next.data_ = std::move(d);
      next.side_to_move_ = other(mover);
      next.move_log_.push_back(MoveSpec::chess(canonical));
      return next;
    }
  }
  next.move_log_.push_back(m);
  return next;
}

BoardMatrix encode_board(const GameState& s) {
  const GameKind kind = s.kind();
  return std::visit(
      overloaded{
          [&](const TicTacToeData& d) {
            return BoardMatrix(kind, std::vector<int>(d.cells.begin(), d.cells.end()));
          },
          [&](const ReversiData& d) {
            return BoardMatrix(kind, std::vector<int>(d.cells.begin(), d.cells.end()));
          },
          [&](const GomokuData& d) {
            return BoardMatrix(kind, std::vector<int>(d.cells.begin(), d.cells.end()));
          },
          [&](const SudokuData& d) {
            return BoardMatrix(kind, std::vector<int>(d.grid.begin(), d.grid.end()));
          },
          [&](const MinesweeperData& d) {
            std::vector<int> cells(64, -1);
            for (int i = 0; i < 64; ++i) {
              if (!d.revealed[static_cast<size_t>(i)]) continue;
              cells[static_cast<size_t>(i)] =
                  d.mines[static_cast<size_t>(i)] ? 9 : minesweeper::adjacent_mines(d.mines, i);
            }
            return BoardMatrix(kind, std::move(cells));
          },
          [&](const ChessData& d) {
            const auto& b = d.position.board();
            return BoardMatrix(kind, std::vector<int>(b.begin(), b.end()));
          },
      },
      s.data());
}

GameState root_state(const GameState& s) {
  GameState root = s.kind() == GameKind::Sudoku
                       ? generate_sudoku_puzzle(s.origin_seed(), s.as<SudokuData>().clue_target)
                       : initial_state(s.kind(), s.origin_seed());
  return replay(root, s.move_log());
}

GameState replay(const GameState& root, const std::vector<MoveSpec>& moves) {
  GameState state = root;
  for (const auto& m : moves) state = apply_move(state, m);
  return state;
}

// ---------------------------------------------------------------------------

namespace reversi {

std::vector<int> flips(const std::array<std::int8_t, 64>& cells, int idx, int player) {
  std::vector<int> out;
  if (idx < 0 || idx >= 64 || cells[static_cast<size_t>(idx)] != 0) return out;
  const int opponent = 3 - player;
  const int r0 = idx / 8, c0 = idx % 8;
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      if (!dr && !dc) continue;
      int r = r0 + dr, c = c0 + dc;
      std::vector<int> run;
      while (r >= 0 && r < 8 && c >= 0 && c < 8 && cells[static_cast<size_t>(r * 8 + c)] == opponent) {
        run.push_back(r * 8 + c);
        r += dr;
        c += dc;
      }
      if (!run.empty() && r >= 0 && r < 8 && c >= 0 && c < 8 &&
          cells[static_cast<size_t>(r * 8 + c)] == player) {
        out.insert(out.end(), run.begin(), run.end());
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool has_move(const std::array<std::int8_t, 64>& cells, int player) {
  for (int i = 0; i < 64; ++i) {
    if (!flips(cells, i, player).empty()) return true;
  }
  return false;
}

int count(const std::array<std::int8_t, 64>& cells, int player) {
  return static_cast<int>(std::count(cells.begin(), cells.end(), player));
}

}  // namespace reversi

namespace gomoku {

int longest_run(const std::array<std::int8_t, 225>& cells, int player) {
  int best = 0;
  for (int r = 0; r < 15; ++r) {
    for (int c = 0; c < 15; ++c) {
      if (cells[static_cast<size_t>(r * 15 + c)] != player) continue;
      for (const auto& d : kLineDirs) {
        const int pr = r - d[0], pc = c - d[1];
        if (pr >= 0 && pr < 15 && pc >= 0 && pc < 15 && cells[static_cast<size_t>(pr * 15 + pc)] == player)
          continue;  // not the start of a run
        int len = 0, rr = r, cc = c;
        while (rr >= 0 && rr < 15 && cc >= 0 && cc < 15 && cells[static_cast<size_t>(rr * 15 + cc)] == player) {
          ++len;
          rr += d[0];
          cc += d[1];
        }
        best = std::max(best, len);
      }
    }
  }
  return best;
}

}  // namespace gomoku

namespace sudoku {

bool placement_ok(const std::array<std::int8_t, 81>& grid, int idx, int digit) {
  const int r = idx / 9, c = idx % 9;
  for (int k = 0; k < 9; ++k) {
    if (k != c && grid[static_cast<size_t>(r * 9 + k)] == digit) return false;
    if (k != r && grid[static_cast<size_t>(k * 9 + c)] == digit) return false;
  }
  const int br = r / 3 * 3, bc = c / 3 * 3;
  for (int rr = br; rr < br + 3; ++rr) {
    for (int cc = bc; cc < bc + 3; ++cc) {
      if ((rr != r || cc != c) && grid[static_cast<size_t>(rr * 9 + cc)] == digit) return false;
    }
  }
  return true;
}

namespace {

struct Candidates {
  std::array<std::uint16_t, 9> row{}, col{}, box{};
};

bool init_candidates(const std::array<std::int8_t, 81>& grid, Candidates& cand) {
  for (int i = 0; i < 81; ++i) {
    const int v = grid[static_cast<size_t>(i)];
    if (!v) continue;
    const std::uint16_t bit = static_cast<std::uint16_t>(1u << v);
    const int r = i / 9, c = i % 9, b = r / 3 * 3 + c / 3;
    if ((cand.row[r] | cand.col[c] | cand.box[b]) & bit) return false;
    cand.row[r] |= bit;
    cand.col[c] |= bit;
    cand.box[b] |= bit;
  }
  return true;
}

// Most-constrained-cell backtracking. When `grid` is non-null the first
// solution found is written back.
int search(std::array<std::int8_t, 81>& grid, Candidates& cand, int limit, bool keep_first) {
  int best = -1, best_count = 10;
  std::uint16_t best_free = 0;
  for (int i = 0; i < 81; ++i) {
    if (grid[static_cast<size_t>(i)]) continue;
    const int r = i / 9, c = i % 9, b = r / 3 * 3 + c / 3;
    const std::uint16_t free = static_cast<std::uint16_t>(~(cand.row[r] | cand.col[c] | cand.box[b]) & 0x3FE);
    const int n = __builtin_popcount(free);
    if (n < best_count) {
      best = i;
      best_count = n;
      best_free = free;
      if (n == 0) return 0;
    }
  }
  if (best < 0) return 1;
  const int r = best / 9, c = best % 9, b = r / 3 * 3 + c / 3;
  int found = 0;
  for (int v = 1; v <= 9 && found < limit; ++v) {
    const std::uint16_t bit = static_cast<std::uint16_t>(1u << v);
    if (!(best_free & bit)) continue;
    grid[static_cast<size_t>(best)] = static_cast<std::int8_t>(v);
    cand.row[r] |= bit;
    cand.col[c] |= bit;
    cand.box[b] |= bit;
    found += search(grid, cand, limit - found, keep_first);
    if (keep_first && found > 0) return found;
    cand.row[r] &= static_cast<std::uint16_t>(~bit);
    cand.col[c] &= static_cast<std::uint16_t>(~bit);
    cand.box[b] &= static_cast<std::uint16_t>(~bit);
    grid[static_cast<size_t>(best)] = 0;
  }
  return found;
}

}  // namespace

int count_solutions(std::array<std::int8_t, 81> grid, int limit) {
  Candidates cand;
  if (!init_candidates(grid, cand)) return 0;
  return search(grid, cand, limit, false);
}

bool solve(std::array<std::int8_t, 81>& grid) {
  Candidates cand;
  if (!init_candidates(grid, cand)) return false;
  return search(grid, cand, 1, true) > 0;
}

}  // namespace sudoku

namespace minesweeper {

int adjacent_mines(const std::bitset<64>& mines, int idx) {
  const int r = idx / 8, c = idx % 8;
  int n = 0;
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      const int rr = r + dr, cc = c + dc;
      if ((dr || dc) && rr >= 0 && rr < 8 && cc >= 0 && cc < 8 && mines[static_cast<size_t>(rr * 8 + cc)]) ++n;
    }
  }
  return n;
}

}  // namespace minesweeper

}  // namespace boardeval
