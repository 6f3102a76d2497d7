#include "boardeval/opponents.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <limits>
#include <unordered_map>

#include "boardeval/uci.hpp"

namespace boardeval {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

// Iterative deepening only when a time budget is configured; otherwise a
// single fixed-depth search keeps replies reproducible.
template <class SearchAtDepth>
auto deepen(const SearchConfig& cfg, SearchAtDepth&& search) {
  if (!cfg.time_budget_ms) return search(cfg.max_depth);
  const auto deadline = Clock::now() + std::chrono::milliseconds(*cfg.time_budget_ms);
  auto best = search(1);
  for (int d = 2; d <= cfg.max_depth && Clock::now() < deadline; ++d) best = search(d);
  return best;
}

void require_kind(const GameState& s, GameKind kind) {
  if (s.kind() != kind) throw Error(ErrorCode::InvalidArgument, "opponent called for the wrong game");
  if (terminal_status(s).terminal()) throw Error(ErrorCode::TerminalState, "opponent called on a finished game");
}

// Tic Tac Toe ----------------------------------------------------------------

int ttt_line_winner(const std::array<std::int8_t, 9>& b) {
  static constexpr int kLines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6},
                                       {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {2, 4, 6}};
  for (const auto& l : kLines)
    if (b[l[0]] != -1 && b[l[0]] == b[l[1]] && b[l[1]] == b[l[2]]) return b[l[0]];
  return -1;
}

std::uint32_t ttt_key(const std::array<std::int8_t, 9>& b, int mark) {
  std::uint32_t k = static_cast<std::uint32_t>(mark);
  for (int v : b) k = k * 3 + static_cast<std::uint32_t>(v + 1);
  return k;
}

int ttt_value(std::array<std::int8_t, 9>& b, int mark, std::unordered_map<std::uint32_t, int>& memo) {
  if (ttt_line_winner(b) != -1) return -1;  // previous mover completed a line
  if (std::none_of(b.begin(), b.end(), [](int v) { return v == -1; })) return 0;
  const auto key = ttt_key(b, mark);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  int best = -2;
  for (size_t i = 0; i < b.size(); ++i) {
    if (b[i] != -1) continue;
    b[i] = static_cast<std::int8_t>(mark);
    best = std::max(best, -ttt_value(b, 1 - mark, memo));
    b[i] = -1;
  }
  memo.emplace(key, best);
  return best;
}

int ttt_cached_value(std::array<std::int8_t, 9> b, int mark) {
  // Whole game tree fits in a few thousand entries; build it once.
  static const std::unordered_map<std::uint32_t, int> table = [] {
    std::unordered_map<std::uint32_t, int> memo;
    std::array<std::int8_t, 9> empty{};
    empty.fill(-1);
    ttt_value(empty, 0, memo);
    ttt_value(empty, 1, memo);
    return memo;
  }();
  if (ttt_line_winner(b) != -1) return -1;
  if (std::none_of(b.begin(), b.end(), [](int v) { return v == -1; })) return 0;
  if (auto it = table.find(ttt_key(b, mark)); it != table.end()) return it->second;
  std::unordered_map<std::uint32_t, int> memo;  // unreachable layouts from hand-built states
  return ttt_value(b, mark, memo);
}

int ttt_mark(const GameState& s) { return s.side_to_move() == Side::First ? 0 : 1; }

// Reversi --------------------------------------------------------------------

using RevCells = std::array<std::int8_t, 64>;

bool rev_corner(int r, int c) { return (r == 0 || r == 7) && (c == 0 || c == 7); }

bool rev_corner_adjacent(int r, int c) {
  for (int cr : {0, 7})
    for (int cc : {0, 7})
      if (std::abs(r - cr) <= 1 && std::abs(c - cc) <= 1 && !(r == cr && c == cc)) return true;
  return false;
}

std::vector<int> rev_moves(const RevCells& cells, int player) {
  std::vector<int> out;
  for (int i = 0; i < 64; ++i)
    if (!reversi::flips(cells, i, player).empty()) out.push_back(i);
  return out;
}

RevCells rev_play(RevCells cells, int idx, int player) {
  for (int f : reversi::flips(cells, idx, player)) cells[static_cast<size_t>(f)] = static_cast<std::int8_t>(player);
  cells[static_cast<size_t>(idx)] = static_cast<std::int8_t>(player);
  return cells;
}

double rev_terminal(const RevCells& cells, int player, const SearchConfig& cfg) {
  const int diff = reversi::count(cells, player) - reversi::count(cells, 3 - player);
  const double sign = diff > 0 ? 1.0 : diff < 0 ? -1.0 : 0.0;
  return cfg.weight("disc", 1.0) * diff + cfg.weight("win", 1000.0) * sign;
}

double rev_search(const RevCells& cells, int to_move, int depth, double alpha, double beta, int root,
                  const SearchConfig& cfg) {
  auto moves = rev_moves(cells, to_move);
  if (moves.empty()) {
    if (!reversi::has_move(cells, 3 - to_move)) return rev_terminal(cells, root, cfg);
    to_move = 3 - to_move;  // pass
    moves = rev_moves(cells, to_move);
  }
  if (depth == 0) return reversi_eval(cells, root, cfg);
  if (to_move == root) {
    double best = -kInf;
    for (int m : moves) {
      best = std::max(best, rev_search(rev_play(cells, m, to_move), 3 - to_move, depth - 1, alpha, beta, root, cfg));
      alpha = std::max(alpha, best);
      if (alpha >= beta) break;
    }
    return best;
  }
  double best = kInf;
  for (int m : moves) {
    best = std::min(best, rev_search(rev_play(cells, m, to_move), 3 - to_move, depth - 1, alpha, beta, root, cfg));
    beta = std::min(beta, best);
    if (alpha >= beta) break;
  }
  return best;
}

// Gomoku ---------------------------------------------------------------------

using GoCells = std::array<std::int8_t, 225>;
constexpr int kDirs[4][2] = {{0, 1}, {1, 0}, {1, 1}, {1, -1}};

bool go_five_through(const GoCells& cells, int idx, int player) {
  const int r0 = idx / 15, c0 = idx % 15;
  for (const auto& d : kDirs) {
    int run = 1;
    for (int sgn : {1, -1}) {
      int r = r0 + sgn * d[0], c = c0 + sgn * d[1];
      while (r >= 0 && r < 15 && c >= 0 && c < 15 && cells[static_cast<size_t>(r * 15 + c)] == player) {
        ++run;
        r += sgn * d[0];
        c += sgn * d[1];
      }
    }
    if (run >= 5) return true;
  }
  return false;
}

std::vector<int> go_candidates(const GoCells& cells) {
  std::array<bool, 225> near{};
  bool any = false;
  for (int i = 0; i < 225; ++i) {
    if (!cells[static_cast<size_t>(i)]) continue;
    any = true;
    const int r = i / 15, c = i % 15;
    for (int rr = std::max(0, r - 2); rr <= std::min(14, r + 2); ++rr)
      for (int cc = std::max(0, c - 2); cc <= std::min(14, c + 2); ++cc) near[static_cast<size_t>(rr * 15 + cc)] = true;
  }
  std::vector<int> out;
  for (int i = 0; i < 225; ++i)
    if (!cells[static_cast<size_t>(i)] && (near[static_cast<size_t>(i)] || !any)) out.push_back(i);
  return out;
}

double go_search(GoCells& cells, int to_move, int depth, double alpha, double beta, int root, const SearchConfig& cfg) {
  if (depth == 0) return gomoku_eval(cells, root, cfg);
  const auto cands = go_candidates(cells);
  if (cands.empty()) return 0.0;
  const double win = cfg.weight("five", 1e6) * 10.0 * (1 + depth);
  const bool maximizing = to_move == root;
  double best = maximizing ? -kInf : kInf;
  for (int m : cands) {
    cells[static_cast<size_t>(m)] = static_cast<std::int8_t>(to_move);
    double v;
    if (go_five_through(cells, m, to_move)) v = maximizing ? win : -win;
    else v = go_search(cells, 3 - to_move, depth - 1, alpha, beta, root, cfg);
    cells[static_cast<size_t>(m)] = 0;
    if (maximizing) {
      best = std::max(best, v);
      alpha = std::max(alpha, best);
    } else {
      best = std::min(best, v);
      beta = std::min(beta, best);
    }
    if (alpha >= beta) break;
  }
  return best;
}

int go_stone(const GameState& s) { return s.side_to_move() == Side::First ? 1 : 2; }

// Chess ----------------------------------------------------------------------

constexpr double kMate = 1e6;

std::vector<chess::Move> ordered_moves(const chess::Position& pos) {
  auto moves = pos.legal_moves();
  // Captures first, most valuable victim first; stable keeps generation order.
  std::stable_sort(moves.begin(), moves.end(), [&](const chess::Move& a, const chess::Move& b) {
    const int va = (a.flags & chess::kEnPassant) ? 1 : chess::material_value(pos.piece(a.to));
    const int vb = (b.flags & chess::kEnPassant) ? 1 : chess::material_value(pos.piece(b.to));
    return va > vb;
  });
  return moves;
}

double chess_negamax(const chess::Position& pos, int depth, int ply, double alpha, double beta, const SearchConfig& cfg) {
  const auto moves = ordered_moves(pos);
  if (moves.empty()) return pos.in_check() ? -(kMate - ply) : 0.0;
  if (depth == 0) return chess_eval(pos, cfg) * (pos.white_to_move() ? 1.0 : -1.0);
  double best = -kInf;
  for (const auto& m : moves) {
    best = std::max(best, -chess_negamax(pos.after(m), depth - 1, ply + 1, -beta, -alpha, cfg));
    alpha = std::max(alpha, best);
    if (alpha >= beta) break;
  }
  return best;
}

std::vector<std::string> uci_history(const GameState& s) {
  chess::Position p = chess::Position::start();
  std::vector<std::string> out;
  for (const auto& m : s.move_log()) {
    const auto mv = p.parse_san(std::get<SanMove>(m.payload).san);
    if (!mv) throw Error(ErrorCode::InvalidArgument, "move log does not replay");
    out.push_back(p.uci(*mv));
    p.make(*mv);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

SearchConfig default_search_config(GameKind kind) {
  SearchConfig cfg;
  switch (kind) {
    case GameKind::Reversi:
      cfg.max_depth = 4;
      cfg.eval_weights = {{"disc", 1}, {"corner", 25}, {"corner_adjacent", -8}, {"edge", 5}, {"mobility", 2}, {"win", 1000}};
      break;
    case GameKind::Gomoku:
      cfg.max_depth = 2;
      cfg.eval_weights = {{"five", 1e6},        {"open_four", 1e4}, {"closed_four", 1e3}, {"open_three", 1e3},
                          {"closed_three", 1e2}, {"open_two", 1e1},  {"closed_two", 1}};
      break;
    case GameKind::Chess:
      cfg.max_depth = 3;
      cfg.eval_weights = {{"mobility", 0.1}};
      break;
    default:
      cfg.max_depth = 9;
      break;
  }
  return cfg;
}

EngineEndpoint endpoint_from_env() {
  EngineEndpoint ep;
  if (const char* path = std::getenv("BOARDEVAL_CHESS_ENGINE"); path && *path) {
    ep.executable = path;
    ep.enabled = true;
  }
  return ep;
}

int ttt_minimax_value(const GameState& s) {
  if (s.kind() != GameKind::TicTacToe) throw Error(ErrorCode::InvalidArgument, "not a tic tac toe state");
  return ttt_cached_value(s.as<TicTacToeData>().cells, ttt_mark(s));
}

MoveSpec ttt_minimax_move(const GameState& s) {
  require_kind(s, GameKind::TicTacToe);
  auto b = s.as<TicTacToeData>().cells;
  const int mark = ttt_mark(s);
  int best = -2, best_idx = -1;
  for (int i = 0; i < 9; ++i) {
    if (b[static_cast<size_t>(i)] != -1) continue;
    b[static_cast<size_t>(i)] = static_cast<std::int8_t>(mark);
    const int v = -ttt_cached_value(b, 1 - mark);
    b[static_cast<size_t>(i)] = -1;
    if (v > best) {
      best = v;
      best_idx = i;
    }
  }
  return MoveSpec::cell(GameKind::TicTacToe, {best_idx / 3, best_idx % 3});
}

double reversi_eval(const RevCells& cells, int player, const SearchConfig& cfg) {
  const int opp = 3 - player;
  double score = cfg.weight("disc", 1.0) * (reversi::count(cells, player) - reversi::count(cells, opp));
  const double corner = cfg.weight("corner", 25), adjacent = cfg.weight("corner_adjacent", -8),
               edge = cfg.weight("edge", 5);
  for (int i = 0; i < 64; ++i) {
    const int v = cells[static_cast<size_t>(i)];
    if (!v) continue;
    const int r = i / 8, c = i % 8;
    double w = 0;
    if (rev_corner(r, c)) w = corner;
    else if (rev_corner_adjacent(r, c)) w = adjacent;
    else if (r == 0 || r == 7 || c == 0 || c == 7) w = edge;
    score += v == player ? w : -w;
  }
  const double mob = cfg.weight("mobility", 2);
  if (mob != 0.0) {
    score += mob * (static_cast<double>(rev_moves(cells, player).size()) - static_cast<double>(rev_moves(cells, opp).size()));
  }
  return score;
}

MoveSpec reversi_alphabeta_move(const GameState& s, const SearchConfig& cfg) {
  if (s.kind() != GameKind::Reversi) throw Error(ErrorCode::InvalidArgument, "not a reversi state");
  if (cfg.max_depth < 1) throw Error(ErrorCode::InvalidArgument, "max_depth must be at least 1");
  const auto& cells = s.as<ReversiData>().cells;
  const int player = go_stone(s);
  const auto moves = rev_moves(cells, player);
  if (moves.empty()) throw Error(ErrorCode::IllegalMove, "reversi: side to move has no legal move");
  const int pick = deepen(cfg, [&](int depth) {
    double best = -kInf, alpha = -kInf;
    int chosen = moves.front();
    for (int m : moves) {
      const double v = rev_search(rev_play(cells, m, player), 3 - player, depth - 1, alpha, kInf, player, cfg);
      if (v > best) {
        best = v;
        chosen = m;
      }
      alpha = std::max(alpha, best);
    }
    return chosen;
  });
  return MoveSpec::cell(GameKind::Reversi, {pick / 8, pick % 8});
}

double gomoku_eval(const GoCells& cells, int player, const SearchConfig& cfg) {
  const double five = cfg.weight("five", 1e6), open4 = cfg.weight("open_four", 1e4),
               closed4 = cfg.weight("closed_four", 1e3), open3 = cfg.weight("open_three", 1e3),
               closed3 = cfg.weight("closed_three", 1e2), open2 = cfg.weight("open_two", 1e1),
               closed2 = cfg.weight("closed_two", 1);
  double totals[3] = {0, 0, 0};
  auto at = [&](int r, int c) { return (r < 0 || r >= 15 || c < 0 || c >= 15) ? -1 : cells[static_cast<size_t>(r * 15 + c)]; };
  for (int r = 0; r < 15; ++r) {
    for (int c = 0; c < 15; ++c) {
      const int v = cells[static_cast<size_t>(r * 15 + c)];
      if (!v) continue;
      for (const auto& d : kDirs) {
        if (at(r - d[0], c - d[1]) == v) continue;  // count each run once, from its start
        int len = 0, rr = r, cc = c;
        while (at(rr, cc) == v) {
          ++len;
          rr += d[0];
          cc += d[1];
        }
        const int open = (at(r - d[0], c - d[1]) == 0) + (at(rr, cc) == 0);
        double score = 0;
        if (len >= 5) score = five;
        else if (open == 0) score = 0;
        else if (len == 4) score = open == 2 ? open4 : closed4;
        else if (len == 3) score = open == 2 ? open3 : closed3;
        else if (len == 2) score = open == 2 ? open2 : closed2;
        totals[v] += score;
      }
    }
  }
  return totals[player] - totals[3 - player];
}

MoveSpec gomoku_search_move(const GameState& s, const SearchConfig& cfg) {
  require_kind(s, GameKind::Gomoku);
  if (cfg.max_depth < 1) throw Error(ErrorCode::InvalidArgument, "max_depth must be at least 1");
  GoCells cells = s.as<GomokuData>().cells;
  const int player = go_stone(s);
  const auto cands = go_candidates(cells);
  auto to_move = [](int idx) { return MoveSpec::cell(GameKind::Gomoku, {idx / 15, idx % 15}); };
  if (std::all_of(cells.begin(), cells.end(), [](int v) { return v == 0; })) return to_move(7 * 15 + 7);
  // Immediate wins and forced blocks settle the move before any search.
  for (int who : {player, 3 - player}) {
    for (int m : cands) {
      cells[static_cast<size_t>(m)] = static_cast<std::int8_t>(who);
      const bool five = go_five_through(cells, m, who);
      cells[static_cast<size_t>(m)] = 0;
      if (five) return to_move(m);
    }
  }
  const int pick = deepen(cfg, [&](int depth) {
    double best = -kInf, alpha = -kInf;
    int chosen = cands.front();
    for (int m : cands) {
      cells[static_cast<size_t>(m)] = static_cast<std::int8_t>(player);
      const double v = go_search(cells, 3 - player, depth - 1, alpha, kInf, player, cfg);
      cells[static_cast<size_t>(m)] = 0;
      if (v > best) {
        best = v;
        chosen = m;
      }
      alpha = std::max(alpha, best);
    }
    return chosen;
  });
  return to_move(pick);
}

double chess_eval(const chess::Position& pos, const SearchConfig& cfg) {
  double material = 0;
  for (int sq = 0; sq < 64; ++sq) {
    const int p = pos.piece(sq);
    material += p > 0 ? chess::material_value(p) : -chess::material_value(p);
  }
  const double mob = cfg.weight("mobility", 0.1);
  if (mob == 0.0) return material;
  return material + mob * (pos.pseudo_mobility(true) - pos.pseudo_mobility(false));
}

MoveSpec chess_search_move(const GameState& s, const SearchConfig& cfg) {
  require_kind(s, GameKind::Chess);
  if (cfg.max_depth < 1) throw Error(ErrorCode::InvalidArgument, "max_depth must be at least 1");
  const auto& pos = s.as<ChessData>().position;
  const auto moves = ordered_moves(pos);
  const chess::Move pick = deepen(cfg, [&](int depth) {
    double best = -kInf, alpha = -kInf;
    chess::Move chosen = moves.front();
    for (const auto& m : moves) {
      const double v = -chess_negamax(pos.after(m), depth - 1, 1, -kInf, -alpha, cfg);
      if (v > best) {
        best = v;
        chosen = m;
      }
      alpha = std::max(alpha, best);
    }
    return chosen;
  });
  return MoveSpec::chess(pos.san(pick));
}

ChessReply chess_engine_move(const GameState& s, const EngineEndpoint& ep, const SearchConfig& cfg,
                             UciEngine* session) {
  require_kind(s, GameKind::Chess);
  if (ep.enabled) {
    try {
      std::optional<UciEngine> local;
      UciEngine& engine = session ? *session : local.emplace(ep.executable);
      const std::string token = engine.bestmove(chess::Position::start().fen(), uci_history(s), ep.movetime_ms);
      const auto& pos = s.as<ChessData>().position;
      if (auto m = pos.parse_uci(token)) return {MoveSpec::chess(pos.san(*m)), std::nullopt};
      return {chess_search_move(s, cfg), "engine replied with illegal move '" + token + "'; used internal search"};
    } catch (const Error& e) {
      return {chess_search_move(s, cfg), std::string(e.what()) + "; used internal search"};
    }
  }
  return {chess_search_move(s, cfg), std::nullopt};
}

MoveSpec opponent_move(const GameState& s, const OpponentConfig& cfg, std::vector<std::string>* warnings,
                       UciEngine* session) {
  switch (s.kind()) {
    case GameKind::TicTacToe: return ttt_minimax_move(s);
    case GameKind::Reversi: return reversi_alphabeta_move(s, cfg.reversi);
    case GameKind::Gomoku: return gomoku_search_move(s, cfg.gomoku);
    case GameKind::Chess: {
      auto reply = chess_engine_move(s, cfg.engine, cfg.chess, session);
      if (reply.warning && warnings) warnings->push_back(*reply.warning);
      return reply.move;
    }
    default:
      throw Error(ErrorCode::InvalidArgument, std::string(game_id(s.kind())) + " has no opponent");
  }
}

}  // namespace boardeval
