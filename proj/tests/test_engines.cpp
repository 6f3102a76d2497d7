#include <gtest/gtest.h>

#include <deque>
#include <set>

#include "boardeval/engines.hpp"
#include "boardeval/rng.hpp"
#include "boardeval/statesgen.hpp"

using namespace boardeval;
namespace ch = boardeval::chess;

namespace {

GameState play_labels(GameKind k, std::initializer_list<const char*> labels) {
  GameState s = initial_state(k, Seed{1});
  for (const char* l : labels) s = apply_move(s, MoveSpec::cell(k, label_to_coord(k, l)));
  return s;
}

GameState play_san(std::initializer_list<const char*> sans) {
  GameState s = initial_state(GameKind::Chess, Seed{1});
  for (const char* m : sans) s = apply_move(s, MoveSpec::chess(m));
  return s;
}

}  // namespace

// Chess move generation ------------------------------------------------------

TEST(ChessPerft, StartPosition) {
  const auto p = ch::Position::start();
  EXPECT_EQ(ch::perft(p, 1), 20u);
  EXPECT_EQ(ch::perft(p, 2), 400u);
  EXPECT_EQ(ch::perft(p, 3), 8902u);
}

TEST(ChessPerft, Kiwipete) {
  const auto p = ch::Position::from_fen("r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1");
  EXPECT_EQ(ch::perft(p, 1), 48u);
  EXPECT_EQ(ch::perft(p, 2), 2039u);
  EXPECT_EQ(ch::perft(p, 3), 97862u);
}

TEST(ChessPerft, EndgameWithEnPassantPins) {
  const auto p = ch::Position::from_fen("8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1");
  EXPECT_EQ(ch::perft(p, 1), 14u);
  EXPECT_EQ(ch::perft(p, 2), 191u);
  EXPECT_EQ(ch::perft(p, 3), 2812u);
  EXPECT_EQ(ch::perft(p, 4), 43238u);
}

TEST(ChessPerft, PromotionsAndCastlingThroughCheck) {
  const auto p = ch::Position::from_fen("rnbq1k1r/pp1Pbppp/2p5/8/2B5/8/PPP1NnPP/RNBQK2R w KQ - 1 8");
  EXPECT_EQ(ch::perft(p, 1), 44u);
  EXPECT_EQ(ch::perft(p, 2), 1486u);
  EXPECT_EQ(ch::perft(p, 3), 62379u);
}

TEST(ChessFen, RoundTrip) {
  const char* fens[] = {
      "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1",
      "r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1",
      "8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 b - - 3 40",
  };
  for (const char* f : fens) EXPECT_EQ(ch::Position::from_fen(f).fen(), f);
  EXPECT_THROW(ch::Position::from_fen("not a fen"), Error);
}

TEST(ChessSan, GenerationAndParsing) {
  const auto p = ch::Position::start();
  std::set<std::string> sans;
  for (const auto& m : p.legal_moves()) sans.insert(p.san(m));
  EXPECT_EQ(sans.size(), 20u);
  EXPECT_TRUE(sans.count("e4") && sans.count("Nf3") && sans.count("a3"));
  EXPECT_TRUE(p.parse_san("Nf3").has_value());
  EXPECT_TRUE(p.parse_san("Nf3+").has_value());
  EXPECT_TRUE(p.parse_san("Ng1f3").has_value() || !p.parse_san("Ng1f3").has_value());
  EXPECT_FALSE(p.parse_san("Nf4").has_value());
  EXPECT_FALSE(p.parse_san("").has_value());

  const auto castle = ch::Position::from_fen("r3k2r/8/8/8/8/8/8/R3K2R w KQkq - 0 1");
  EXPECT_TRUE(castle.parse_san("O-O").has_value());
  EXPECT_TRUE(castle.parse_san("0-0-0").has_value());

  const auto promo = ch::Position::from_fen("8/4P3/8/8/8/8/k7/4K3 w - - 0 1");
  const auto m = promo.parse_san("e8=Q");
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->promotion, ch::Queen);
  EXPECT_EQ(promo.parse_san("e8Q"), m);
  EXPECT_EQ(promo.san(*m), "e8=Q");

  const auto dis = ch::Position::from_fen("4k3/8/8/8/8/8/4K3/R6R w - - 0 1");
  std::set<std::string> rook;
  for (const auto& mv : dis.legal_moves()) rook.insert(dis.san(mv));
  EXPECT_TRUE(rook.count("Rad1") && rook.count("Rhd1"));
}

TEST(ChessSan, UciTranslation) {
  const auto p = ch::Position::start();
  const auto m = p.parse_uci("e2e4");
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(p.san(*m), "e4");
  EXPECT_EQ(p.uci(*m), "e2e4");
  EXPECT_FALSE(p.parse_uci("e2e5").has_value());
}

// Chess game layer -----------------------------------------------------------

TEST(ChessGame, InitialEncodingMatchesPromptExample) {
  const std::vector<int> expected = {
      -4, -2, -3, -5, -6, -3, -2, -4, -1, -1, -1, -1, -1, -1, -1, -1,
      0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,
      0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,
      1,  1,  1,  1,  1,  1,  1,  1,  4,  2,  3,  5,  6,  3,  2,  4};
  EXPECT_EQ(encode_board(initial_state(GameKind::Chess, Seed{3})), BoardMatrix(GameKind::Chess, expected));
  EXPECT_EQ(legal_moves(initial_state(GameKind::Chess, Seed{3})).size(), 20u);
}

TEST(ChessGame, ScholarsMate) {
  const auto s = play_san({"e4", "e5", "Bc4", "Nc6", "Qh5", "Nf6", "Qxf7#"});
  EXPECT_EQ(terminal_status(s), Outcome::win(Side::First));
  EXPECT_EQ(s.as<ChessData>().captured_black_value, 1);
  EXPECT_THROW(legal_moves(s), Error);
  EXPECT_THROW(apply_move(s, MoveSpec::chess("Ke7")), Error);
}

TEST(ChessGame, FoolsMateIsBlackWin) {
  const auto s = play_san({"f3", "e5", "g4", "Qh4#"});
  EXPECT_EQ(terminal_status(s), Outcome::win(Side::Second));
}

TEST(ChessGame, ThreefoldRepetition) {
  const auto s = play_san({"Nf3", "Nf6", "Ng1", "Ng8", "Nf3", "Nf6", "Ng1", "Ng8"});
  EXPECT_EQ(terminal_status(s), Outcome::tie());
  const auto before = play_san({"Nf3", "Nf6", "Ng1", "Ng8", "Nf3", "Nf6", "Ng1"});
  EXPECT_FALSE(terminal_status(before).terminal());
}

TEST(ChessGame, StalemateAndInsufficientMaterial) {
  GameState s = initial_state(GameKind::Chess, Seed{1});
  ChessData d = s.as<ChessData>();
  d.position = ch::Position::from_fen("7k/5Q2/6K1/8/8/8/8/8 b - - 0 1");
  d.history = {d.position.repetition_key()};
  EXPECT_EQ(terminal_status(GameState(GameKind::Chess, Seed{1}, d, Side::Second)), Outcome::tie());
  d.position = ch::Position::from_fen("7k/8/6K1/8/8/8/8/5B2 b - - 0 1");
  EXPECT_EQ(terminal_status(GameState(GameKind::Chess, Seed{1}, d, Side::Second)), Outcome::tie());
  d.position = ch::Position::from_fen("7k/8/6K1/8/8/8/8/5R2 b - - 99 80");
  EXPECT_FALSE(terminal_status(GameState(GameKind::Chess, Seed{1}, d, Side::Second)).terminal());
  d.position = ch::Position::from_fen("7k/8/6K1/8/8/8/8/5R2 b - - 100 80");
  EXPECT_EQ(terminal_status(GameState(GameKind::Chess, Seed{1}, d, Side::Second)), Outcome::tie());
}

TEST(ChessGame, EnPassantCaptureCountsAsPawn) {
  const auto s = play_san({"e4", "a6", "e5", "d5", "exd6"});
  EXPECT_EQ(s.as<ChessData>().captured_black_value, 1);
  EXPECT_EQ(encode_board(s).at(label_to_coord(GameKind::Chess, "d5")), 0);
}

// Tic Tac Toe ----------------------------------------------------------------

TEST(TicTacToe, InitialAndEncoding) {
  const auto s = initial_state(GameKind::TicTacToe, Seed{5});
  EXPECT_EQ(s.side_to_move(), Side::First);
  EXPECT_EQ(legal_moves(s).size(), 9u);
  const auto after = apply_move(s, MoveSpec::cell(GameKind::TicTacToe, {0, 0}));
  EXPECT_EQ(encode_board(after), BoardMatrix::empty(GameKind::TicTacToe).with({0, 0}, 0));
  EXPECT_EQ(after.side_to_move(), Side::Second);
}

TEST(TicTacToe, OccupiedCellIsIllegal) {
  const auto s = play_labels(GameKind::TicTacToe, {"A1"});
  try {
    apply_move(s, MoveSpec::cell(GameKind::TicTacToe, {0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IllegalMove);
  }
}

TEST(TicTacToe, WinAndTie) {
  EXPECT_EQ(terminal_status(play_labels(GameKind::TicTacToe, {"A1", "B1", "A2", "B2", "A3"})),
            Outcome::win(Side::First));
  EXPECT_EQ(terminal_status(play_labels(GameKind::TicTacToe, {"A1", "A2", "A3", "B2", "B1", "B3", "C2", "C1", "C3"})),
            Outcome::tie());
}

// Reversi --------------------------------------------------------------------

TEST(Reversi, InitialPosition) {
  const auto s = initial_state(GameKind::Reversi, Seed{0});
  const auto m = encode_board(s);
  EXPECT_EQ(m.at(label_to_coord(GameKind::Reversi, "D4")), 1);
  EXPECT_EQ(m.at(label_to_coord(GameKind::Reversi, "E5")), 1);
  EXPECT_EQ(m.at(label_to_coord(GameKind::Reversi, "D5")), 2);
  EXPECT_EQ(m.at(label_to_coord(GameKind::Reversi, "E4")), 2);
  EXPECT_EQ(reversi::count(s.as<ReversiData>().cells, 1), 2);
  EXPECT_EQ(reversi::count(s.as<ReversiData>().cells, 2), 2);
}

TEST(Reversi, InitialMovesByBruteForce) {
  const auto s = initial_state(GameKind::Reversi, Seed{0});
  const auto& cells = s.as<ReversiData>().cells;
  // Independent check: walk each ray by hand.
  int count = 0;
  for (int idx = 0; idx < 64; ++idx) {
    if (cells[idx]) continue;
    bool ok = false;
    for (int dr = -1; dr <= 1; ++dr)
      for (int dc = -1; dc <= 1; ++dc) {
        if (!dr && !dc) continue;
        int r = idx / 8 + dr, c = idx % 8 + dc, seen = 0;
        while (r >= 0 && r < 8 && c >= 0 && c < 8 && cells[r * 8 + c] == 2) r += dr, c += dc, ++seen;
        if (seen && r >= 0 && r < 8 && c >= 0 && c < 8 && cells[r * 8 + c] == 1) ok = true;
      }
    count += ok;
  }
  EXPECT_EQ(count, 4);
  EXPECT_EQ(legal_moves(s).size(), 4u);
}

TEST(Reversi, FlipAndIllegalPlacement) {
  const auto s = initial_state(GameKind::Reversi, Seed{0});
  // Black at C5 sandwiches the white disc at D5 against E5.
  const auto after = apply_move(s, MoveSpec::cell(GameKind::Reversi, label_to_coord(GameKind::Reversi, "C5")));
  EXPECT_EQ(encode_board(after).at(label_to_coord(GameKind::Reversi, "D5")), 1);
  EXPECT_EQ(reversi::count(after.as<ReversiData>().cells, 1), 4);
  EXPECT_FALSE(is_legal(s, MoveSpec::cell(GameKind::Reversi, {0, 0})));
}

TEST(Reversi, DiscCountEnding) {
  ReversiData d;
  for (int i = 0; i < 64; ++i) d.cells[i] = i < 33 ? 1 : 2;
  EXPECT_EQ(terminal_status(GameState(GameKind::Reversi, Seed{0}, d, Side::First)), Outcome::win(Side::First));
  for (int i = 0; i < 64; ++i) d.cells[i] = i < 32 ? 1 : 2;
  EXPECT_EQ(terminal_status(GameState(GameKind::Reversi, Seed{0}, d, Side::First)), Outcome::tie());
}

TEST(Reversi, PassReturnsTurnToMover) {
  // White has no reply after black takes A3, so black moves again.
  ReversiData d;
  d.cells.fill(0);
  d.cells[0] = 1;   // A1 black
  d.cells[8] = 2;   // B1 white
  d.cells[17] = 2;  // C2 white
  d.cells[26] = 1;  // D3 black
  GameState s(GameKind::Reversi, Seed{0}, d, Side::First);
  const auto moves = legal_moves(s);
  ASSERT_FALSE(moves.empty());
  for (const auto& m : moves) {
    const auto next = apply_move(s, m);
    const auto& c = next.as<ReversiData>().cells;
    if (!reversi::has_move(c, 2) && reversi::has_move(c, 1)) EXPECT_EQ(next.side_to_move(), Side::First);
  }
}

// Gomoku ---------------------------------------------------------------------

TEST(Gomoku, FiveAndOverlineWin) {
  GomokuData d;
  for (int c = 0; c < 5; ++c) d.cells[7 * 15 + c] = 1;
  EXPECT_EQ(terminal_status(GameState(GameKind::Gomoku, Seed{0}, d, Side::Second)), Outcome::win(Side::First));
  d.cells[7 * 15 + 5] = 1;
  EXPECT_EQ(gomoku::longest_run(d.cells, 1), 6);
  EXPECT_EQ(terminal_status(GameState(GameKind::Gomoku, Seed{0}, d, Side::Second)), Outcome::win(Side::First));
  GomokuData diag;
  for (int i = 0; i < 5; ++i) diag.cells[(10 - i) * 15 + 2 + i] = 2;
  EXPECT_EQ(terminal_status(GameState(GameKind::Gomoku, Seed{0}, diag, Side::First)), Outcome::win(Side::Second));
  GomokuData four;
  for (int c = 0; c < 4; ++c) four.cells[c] = 1;
  EXPECT_FALSE(terminal_status(GameState(GameKind::Gomoku, Seed{0}, four, Side::First)).terminal());
}

// Minesweeper ----------------------------------------------------------------

TEST(Minesweeper, LayoutAndInitialView) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto s = initial_state(GameKind::Minesweeper, Seed{i});
    EXPECT_EQ(s.as<MinesweeperData>().mines.count(), 10u);
    EXPECT_EQ(encode_board(s), BoardMatrix::empty(GameKind::Minesweeper));
  }
  EXPECT_EQ(generate_mine_layout(Seed{42}), generate_mine_layout(Seed{42}));
  EXPECT_NE(generate_mine_layout(Seed{42}), generate_mine_layout(Seed{43}));
}

TEST(Minesweeper, LayoutUniformity) {
  std::array<int, 64> hits{};
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const auto m = generate_mine_layout(derive_seed(Seed{11}, "mines", static_cast<std::uint64_t>(i)));
    for (int c = 0; c < 64; ++c) hits[c] += m[c];
  }
  for (int h : hits) EXPECT_NEAR(static_cast<double>(h) / n, 10.0 / 64.0, 0.02);
}

TEST(Minesweeper, FloodRevealMatchesBfsOracle) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = initial_state(GameKind::Minesweeper, Seed{seed});
    const auto mines = s.as<MinesweeperData>().mines;
    for (int start = 0; start < 64; ++start) {
      if (mines[start] || minesweeper::adjacent_mines(mines, start) != 0) continue;
      // Oracle: BFS over zero cells, then add every safe neighbour.
      std::set<int> zeros{start}, expected;
      std::deque<int> q{start};
      while (!q.empty()) {
        const int x = q.front();
        q.pop_front();
        for (int dr = -1; dr <= 1; ++dr)
          for (int dc = -1; dc <= 1; ++dc) {
            const int r = x / 8 + dr, c = x % 8 + dc;
            if (r < 0 || r > 7 || c < 0 || c > 7) continue;
            const int y = r * 8 + c;
            if (!mines[y] && minesweeper::adjacent_mines(mines, y) == 0 && zeros.insert(y).second) q.push_back(y);
          }
      }
      for (int z : zeros) {
        expected.insert(z);
        for (int dr = -1; dr <= 1; ++dr)
          for (int dc = -1; dc <= 1; ++dc) {
            const int r = z / 8 + dr, c = z % 8 + dc;
            if (r >= 0 && r < 8 && c >= 0 && c < 8 && !mines[r * 8 + c]) expected.insert(r * 8 + c);
          }
      }
      const auto after = apply_move(s, MoveSpec::cell(GameKind::Minesweeper, {start / 8, start % 8}));
      std::set<int> got;
      for (int i = 0; i < 64; ++i)
        if (after.as<MinesweeperData>().revealed[i]) got.insert(i);
      ASSERT_EQ(got, expected) << "seed " << seed << " start " << start;
      break;
    }
  }
}

TEST(Minesweeper, MineIsLossAndSafeSweepIsWin) {
  const auto s = initial_state(GameKind::Minesweeper, Seed{9});
  const auto mines = s.as<MinesweeperData>().mines;
  int mine = 0;
  while (!mines[mine]) ++mine;
  const auto boom = apply_move(s, MoveSpec::cell(GameKind::Minesweeper, {mine / 8, mine % 8}));
  EXPECT_EQ(terminal_status(boom), Outcome::loss(Side::First));
  EXPECT_EQ(encode_board(boom).at(mine / 8, mine % 8), 9);

  GameState t = s;
  size_t prev = 0;
  for (int i = 0; i < 64 && !terminal_status(t).terminal(); ++i) {
    if (mines[i] || t.as<MinesweeperData>().revealed[i]) continue;
    t = apply_move(t, MoveSpec::cell(GameKind::Minesweeper, {i / 8, i % 8}));
    const size_t now = t.as<MinesweeperData>().revealed.count();
    EXPECT_GE(now, prev);
    prev = now;
  }
  EXPECT_EQ(terminal_status(t), Outcome::win(Side::First));
}

// Sudoku ---------------------------------------------------------------------

TEST(Sudoku, PuzzleIsUniqueAndDeterministic) {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto s = generate_sudoku_puzzle(Seed{i}, 30);
    const auto& d = s.as<SudokuData>();
    EXPECT_EQ(sudoku::count_solutions(d.grid, 5), 1);
    EXPECT_GE(static_cast<int>(d.clues.count()), 30);
    auto solved = d.grid;
    ASSERT_TRUE(sudoku::solve(solved));
    EXPECT_EQ(solved, d.solution);
    for (int c = 0; c < 81; ++c) {
      EXPECT_TRUE(sudoku::placement_ok(d.solution, c, d.solution[c]));
      EXPECT_EQ(d.clues[c], d.grid[c] != 0);
    }
    EXPECT_EQ(s, generate_sudoku_puzzle(Seed{i}, 30));
  }
  const auto full = generate_sudoku_puzzle(Seed{1}, 81);
  EXPECT_EQ(full.as<SudokuData>().grid, full.as<SudokuData>().solution);
}

TEST(Sudoku, ClueCannotBeOverwrittenAndWinEqualsSolution) {
  auto s = initial_state(GameKind::Sudoku, Seed{4});
  const auto& d0 = s.as<SudokuData>();
  int clue = 0;
  while (!d0.clues[clue]) ++clue;
  EXPECT_FALSE(is_legal(s, MoveSpec::digit({clue / 9, clue % 9}, d0.grid[clue])));
  const auto solution = d0.solution;
  for (int i = 0; i < 81; ++i) {
    if (s.as<SudokuData>().grid[i] == 0) s = apply_move(s, MoveSpec::digit({i / 9, i % 9}, solution[i]));
  }
  EXPECT_EQ(terminal_status(s), Outcome::win(Side::First));
  EXPECT_EQ(s.as<SudokuData>().grid, solution);
}

// Cross-game properties -------------------------------------------------------

TEST(Engines, ReplayAndClosureOverRandomPlayouts) {
  for (GameKind k : kAllGames) {
    for (std::uint64_t i = 0; i < 30; ++i) {
      Rng rng(derive_seed(Seed{17}, "closure", i));
      GameState s = initial_state(k, derive_seed(Seed{17}, "origin", i));
      const GameState root = s;
      for (int ply = 0; ply < 60 && !terminal_status(s).terminal(); ++ply) {
        const auto moves = legal_moves(s);
        ASSERT_FALSE(moves.empty());
        const int before = k == GameKind::Reversi ? reversi::count(s.as<ReversiData>().cells, 1) +
                                                        reversi::count(s.as<ReversiData>().cells, 2)
                                                  : 0;
        s = apply_move(s, moves[rng.below(moves.size())]);
        if (k == GameKind::Reversi) {
          EXPECT_EQ(reversi::count(s.as<ReversiData>().cells, 1) + reversi::count(s.as<ReversiData>().cells, 2),
                    before + 1);
        }
      }
      EXPECT_EQ(replay(root, s.move_log()), s);
      EXPECT_EQ(root_state(s), s);
    }
  }
}

TEST(StatesGen, PerceptionDensityAndDeterminism) {
  for (GameKind k : kAllGames) {
    GenProfile p = default_profile(k, GenMode::PerceptionRandom);
    EXPECT_EQ(random_perception_state(p, Seed{3}), random_perception_state(p, Seed{3}));
    p.fill_density = 0.0;
    EXPECT_EQ(random_perception_state(p, Seed{3}), BoardMatrix::empty(k));
  }
  GenProfile chess = default_profile(GameKind::Chess, GenMode::PerceptionRandom);
  chess.fill_density = 1.0;
  const auto m = random_perception_state(chess, Seed{8});
  EXPECT_GT(std::count(m.cells().begin(), m.cells().end(), 5), 1);
}

TEST(StatesGen, PerceptionSymbolsAreUniform) {
  for (GameKind k : kAllGames) {
    GenProfile p = default_profile(k, GenMode::PerceptionRandom);
    const auto alpha = cell_alphabet(k);
    std::map<int, int> hist;
    int filled = 0;
    for (std::uint64_t i = 0; i < 400; ++i) {
      const auto m = random_perception_state(p, derive_seed(Seed{5}, "chi", i));
      for (int v : m.cells())
        if (v != alpha[0]) ++hist[v], ++filled;
    }
    const double expected = static_cast<double>(filled) / static_cast<double>(alpha.size() - 1);
    double chi2 = 0;
    for (size_t j = 1; j < alpha.size(); ++j) {
      const double o = hist[alpha[j]];
      chi2 += (o - expected) * (o - expected) / expected;
    }
    // 99.9th percentile of chi-square with at most 12 degrees of freedom.
    EXPECT_LT(chi2, 32.9) << game_id(k);
  }
}

TEST(StatesGen, LegalPlayoutsAreReachableAndLive) {
  for (GameKind k : kAllGames) {
    const GenProfile p = default_profile(k, GenMode::LegalPlayout);
    for (std::uint64_t i = 0; i < 20; ++i) {
      const auto s = random_legal_state(p, derive_seed(Seed{21}, "legal", i));
      EXPECT_FALSE(terminal_status(s).terminal());
      EXPECT_FALSE(legal_moves(s).empty());
      EXPECT_EQ(root_state(s), s);
      if (k != GameKind::Sudoku && k != GameKind::Minesweeper) {
        EXPECT_GE(static_cast<int>(s.move_log().size()), p.depth_min);
        EXPECT_LE(static_cast<int>(s.move_log().size()), p.depth_max);
      }
      EXPECT_EQ(s, random_legal_state(p, derive_seed(Seed{21}, "legal", i)));
    }
  }
}

TEST(StatesGen, ChessPlayoutsPassLegalityAudit) {
  GenProfile p = default_profile(GameKind::Chess, GenMode::LegalPlayout);
  p.depth_min = p.depth_max = 8;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto s = random_legal_state(p, Seed{i});
    const auto& pos = s.as<ChessData>().position;
    // Side not to move must not be in check.
    EXPECT_FALSE(pos.square_attacked(pos.king_square(!pos.white_to_move()), pos.white_to_move()));
    // Castling rights imply king and rook on their home squares.
    const int cr = pos.castling();
    if (cr & ch::kWhiteKingside) EXPECT_TRUE(pos.piece(60) == ch::King && pos.piece(63) == ch::Rook);
    if (cr & ch::kWhiteQueenside) EXPECT_TRUE(pos.piece(60) == ch::King && pos.piece(56) == ch::Rook);
    if (cr & ch::kBlackKingside) EXPECT_TRUE(pos.piece(4) == -ch::King && pos.piece(7) == -ch::Rook);
    if (cr & ch::kBlackQueenside) EXPECT_TRUE(pos.piece(4) == -ch::King && pos.piece(0) == -ch::Rook);
    EXPECT_EQ(std::count(pos.board().begin(), pos.board().end(), ch::King), 1);
    EXPECT_EQ(std::count(pos.board().begin(), pos.board().end(), -ch::King), 1);
  }
}
