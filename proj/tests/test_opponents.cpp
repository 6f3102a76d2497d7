#include <gtest/gtest.h>

#include <cstdlib>
#include <limits>

#include "boardeval/opponents.hpp"
#include "boardeval/rng.hpp"
#include "boardeval/statesgen.hpp"
#include "boardeval/uci.hpp"

using namespace boardeval;

namespace {

GameState ttt_from(const char* layout, Side to_move) {
  // layout: 9 chars of '.', 'O', 'X'
  TicTacToeData d;
  for (int i = 0; i < 9; ++i) d.cells[i] = layout[i] == 'O' ? 0 : layout[i] == 'X' ? 1 : -1;
  return GameState(GameKind::TicTacToe, Seed{0}, d, to_move);
}

// Plain minimax over the same tree, no pruning.
double reversi_minimax(const std::array<std::int8_t, 64>& cells, int to_move, int depth, int root, const SearchConfig& cfg) {
  std::vector<int> moves;
  for (int i = 0; i < 64; ++i)
    if (!reversi::flips(cells, i, to_move).empty()) moves.push_back(i);
  if (moves.empty()) {
    if (!reversi::has_move(cells, 3 - to_move)) {
      const int diff = reversi::count(cells, root) - reversi::count(cells, 3 - root);
      return cfg.weight("disc", 1) * diff + cfg.weight("win", 1000) * (diff > 0 ? 1 : diff < 0 ? -1 : 0);
    }
    return reversi_minimax(cells, 3 - to_move, depth, root, cfg);
  }
  if (depth == 0) return reversi_eval(cells, root, cfg);
  double best = to_move == root ? -1e18 : 1e18;
  for (int m : moves) {
    auto next = cells;
    for (int f : reversi::flips(cells, m, to_move)) next[f] = static_cast<std::int8_t>(to_move);
    next[m] = static_cast<std::int8_t>(to_move);
    const double v = reversi_minimax(next, 3 - to_move, depth - 1, root, cfg);
    best = to_move == root ? std::max(best, v) : std::min(best, v);
  }
  return best;
}

int reversi_minimax_move(const GameState& s, int depth, const SearchConfig& cfg) {
  const auto& cells = s.as<ReversiData>().cells;
  const int player = s.side_to_move() == Side::First ? 1 : 2;
  double best = -1e18;
  int pick = -1;
  for (int i = 0; i < 64; ++i) {
    if (reversi::flips(cells, i, player).empty()) continue;
    auto next = cells;
    for (int f : reversi::flips(cells, i, player)) next[f] = static_cast<std::int8_t>(player);
    next[i] = static_cast<std::int8_t>(player);
    const double v = reversi_minimax(next, 3 - player, depth - 1, player, cfg);
    if (v > best) best = v, pick = i;
  }
  return pick;
}

std::string fake_engine_path() { return FAKE_UCI_ENGINE_PATH; }

}  // namespace

TEST(TicTacToeOpponent, TakesWinAndBlocks) {
  // O to move with O O . on the top row: win at A3.
  EXPECT_EQ(ttt_minimax_move(ttt_from("OO.XX....", Side::First)).payload,
            MoveSpec::cell(GameKind::TicTacToe, {0, 2}).payload);
  // X to move must block the top row.
  EXPECT_EQ(ttt_minimax_move(ttt_from("OO..X....", Side::Second)).payload,
            MoveSpec::cell(GameKind::TicTacToe, {0, 2}).payload);
  EXPECT_EQ(ttt_minimax_value(initial_state(GameKind::TicTacToe, Seed{0})), 0);
}

TEST(TicTacToeOpponent, SelfPlayDraws) {
  GameState s = initial_state(GameKind::TicTacToe, Seed{0});
  while (!terminal_status(s).terminal()) s = apply_move(s, ttt_minimax_move(s));
  EXPECT_EQ(terminal_status(s), Outcome::tie());
}

TEST(TicTacToeOpponent, NeverLosesToRandom) {
  for (std::uint64_t g = 0; g < 300; ++g) {
    Rng rng(derive_seed(Seed{2}, "ttt-random", g));
    GameState s = initial_state(GameKind::TicTacToe, Seed{g});
    const Side engine = g % 2 ? Side::First : Side::Second;
    while (!terminal_status(s).terminal()) {
      if (s.side_to_move() == engine) s = apply_move(s, ttt_minimax_move(s));
      else {
        const auto moves = legal_moves(s);
        s = apply_move(s, moves[rng.below(moves.size())]);
      }
    }
    const Outcome o = terminal_status(s);
    EXPECT_TRUE(o == Outcome::tie() || o == Outcome::win(engine));
  }
}

TEST(ReversiOpponent, DepthOnePureDiscPicksMaxFlip) {
  SearchConfig cfg;
  cfg.max_depth = 1;
  cfg.eval_weights = {{"disc", 1}, {"corner", 0}, {"corner_adjacent", 0}, {"edge", 0}, {"mobility", 0}, {"win", 0}};
  GenProfile p = default_profile(GameKind::Reversi, GenMode::LegalPlayout);
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto s = random_legal_state(p, Seed{i});
    const int player = s.side_to_move() == Side::First ? 1 : 2;
    const auto& cells = s.as<ReversiData>().cells;
    size_t best = 0;
    for (int c = 0; c < 64; ++c) best = std::max(best, reversi::flips(cells, c, player).size());
    const auto m = reversi_alphabeta_move(s, cfg);
    const auto cell = std::get<CellMove>(m.payload).cell;
    EXPECT_EQ(reversi::flips(cells, cell.row * 8 + cell.col, player).size(), best);
  }
}

TEST(ReversiOpponent, AlphaBetaMatchesMinimax) {
  const SearchConfig cfg = [] {
    SearchConfig c = default_search_config(GameKind::Reversi);
    c.max_depth = 3;
    return c;
  }();
  GenProfile p = default_profile(GameKind::Reversi, GenMode::LegalPlayout);
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto s = random_legal_state(p, derive_seed(Seed{8}, "ab", i));
    const auto cell = std::get<CellMove>(reversi_alphabeta_move(s, cfg).payload).cell;
    EXPECT_EQ(cell.row * 8 + cell.col, reversi_minimax_move(s, 3, cfg)) << i;
  }
}

TEST(ReversiOpponent, SingleMoveIsTaken) {
  ReversiData d;
  d.cells.fill(0);
  d.cells[0] = 1;
  d.cells[1] = 2;
  GameState s(GameKind::Reversi, Seed{0}, d, Side::First);
  ASSERT_EQ(legal_moves(s).size(), 1u);
  EXPECT_EQ(reversi_alphabeta_move(s, default_search_config(GameKind::Reversi)), legal_moves(s)[0]);
}

TEST(GomokuOpponent, EmptyBoardCenter) {
  const auto s = initial_state(GameKind::Gomoku, Seed{0});
  EXPECT_EQ(move_to_text(gomoku_search_move(s, default_search_config(GameKind::Gomoku))), "H8");
}

TEST(GomokuOpponent, CompletesFiveAndBlocksOpenFour) {
  GomokuData d;
  for (int c = 3; c < 7; ++c) d.cells[5 * 15 + c] = 1;  // black four on row 6, D..G
  d.cells[5 * 15 + 2] = 2;                               // closed on the left
  d.cells[0] = 2;
  d.cells[14] = 2;
  d.cells[224] = 2;
  GameState black(GameKind::Gomoku, Seed{0}, d, Side::First);
  const auto win = gomoku_search_move(black, default_search_config(GameKind::Gomoku));
  EXPECT_EQ(terminal_status(apply_move(black, win)), Outcome::win(Side::First));

  GomokuData o;
  for (int c = 5; c < 9; ++c) o.cells[7 * 15 + c] = 2;  // white open four F8..I8
  o.cells[0] = 1;
  o.cells[1] = 1;
  o.cells[2] = 1;
  GameState s(GameKind::Gomoku, Seed{0}, o, Side::First);
  const auto cell = std::get<CellMove>(gomoku_search_move(s, default_search_config(GameKind::Gomoku)).payload).cell;
  EXPECT_TRUE(cell == (CellCoord{7, 4}) || cell == (CellCoord{7, 9}));
}

TEST(GomokuOpponent, EvalSymmetry) {
  GomokuData d;
  d.cells[100] = 1;
  d.cells[101] = 1;
  const SearchConfig cfg = default_search_config(GameKind::Gomoku);
  EXPECT_DOUBLE_EQ(gomoku_eval(d.cells, 1, cfg), -gomoku_eval(d.cells, 2, cfg));
  EXPECT_DOUBLE_EQ(gomoku_eval(d.cells, 1, cfg), 10.0 + 10.0 * 0);
}

TEST(ChessOpponent, InitialEvalIsBalanced) {
  EXPECT_DOUBLE_EQ(chess_eval(chess::Position::start(), default_search_config(GameKind::Chess)), 0.0);
}

TEST(ChessOpponent, FindsMateInOne) {
  GameState s = initial_state(GameKind::Chess, Seed{0});
  for (const char* m : {"e4", "e5", "Bc4", "Nc6", "Qh5", "Nf6"}) s = apply_move(s, MoveSpec::chess(m));
  const auto reply = chess_engine_move(s, EngineEndpoint{}, default_search_config(GameKind::Chess));
  EXPECT_EQ(std::get<SanMove>(reply.move.payload).san, "Qxf7#");
  EXPECT_FALSE(reply.warning.has_value());
}

TEST(ChessOpponent, ExternalEngineRoundTrip) {
  GameState s = initial_state(GameKind::Chess, Seed{0});
  s = apply_move(s, MoveSpec::chess("e4"));
  EngineEndpoint ep{fake_engine_path(), 10, true};
  ::setenv("FAKE_UCI_MODE", "first", 1);
  const auto reply = chess_engine_move(s, ep, default_search_config(GameKind::Chess));
  EXPECT_FALSE(reply.warning.has_value());
  EXPECT_TRUE(is_legal(s, reply.move));

  UciEngine engine(fake_engine_path());
  EXPECT_EQ(engine.name(), "fake-uci");
  const std::string token = engine.bestmove(chess::Position::start().fen(), {}, 10);
  const auto m = chess::Position::start().parse_uci(token);
  ASSERT_TRUE(m.has_value());
}

TEST(ChessOpponent, EngineFailuresFallBack) {
  GameState s = initial_state(GameKind::Chess, Seed{0});
  const SearchConfig cfg = [] {
    SearchConfig c = default_search_config(GameKind::Chess);
    c.max_depth = 1;
    return c;
  }();
  for (const char* mode : {"illegal", "crash"}) {
    ::setenv("FAKE_UCI_MODE", mode, 1);
    const auto reply = chess_engine_move(s, EngineEndpoint{fake_engine_path(), 10, true}, cfg);
    EXPECT_TRUE(reply.warning.has_value()) << mode;
    EXPECT_TRUE(is_legal(s, reply.move));
  }
  ::setenv("FAKE_UCI_MODE", "silent", 1);
  {
    UciEngine engine(fake_engine_path(), 200);
    EXPECT_THROW(engine.bestmove(chess::Position::start().fen(), {}, 10), Error);
  }
  const auto missing = chess_engine_move(s, EngineEndpoint{"/nonexistent/engine", 10, true}, cfg);
  EXPECT_TRUE(missing.warning.has_value());
  ::setenv("FAKE_UCI_MODE", "first", 1);
}

TEST(Opponents, RepliesAreLegalAndDeterministic) {
  OpponentConfig cfg;
  for (GameKind k : {GameKind::TicTacToe, GameKind::Reversi, GameKind::Gomoku, GameKind::Chess}) {
    GenProfile p = default_profile(k, GenMode::LegalPlayout);
    for (std::uint64_t i = 0; i < 25; ++i) {
      const auto s = random_legal_state(p, derive_seed(Seed{31}, "opp", i));
      const auto m = opponent_move(s, cfg);
      EXPECT_TRUE(is_legal(s, m)) << game_id(k) << " " << move_to_text(m);
      EXPECT_EQ(m, opponent_move(s, cfg));
    }
  }
  EXPECT_THROW(opponent_move(initial_state(GameKind::Sudoku, Seed{1}), cfg), Error);
}
