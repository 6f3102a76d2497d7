#include <gtest/gtest.h>

#include "boardeval/parse_eval.hpp"
#include "boardeval/statesgen.hpp"

using namespace boardeval;

TEST(ParseMatrix, CanonicalAfterMarker) {
  auto r = parse_matrix("Game State: [[0, 1, -1], [-1, -1, 0], [1, 1, 0]]", GameKind::TicTacToe);
  ASSERT_TRUE(r.ok()) << r.error;
  EXPECT_EQ(r.matrix().cells, (std::vector<int>{0, 1, -1, -1, -1, 0, 1, 1, 0}));
}

TEST(ParseMatrix, LastMarkerWins) {
  const std::string text =
      "Example: Game State: [[-1, -1, -1], [-1, -1, -1], [-1, -1, -1]]\n"
      "Now the board:\nGame State: [[1, 1, 1], [0, 0, 0], [-1, -1, -1]]";
  auto r = parse_matrix(text, GameKind::TicTacToe);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.matrix().at(0, 0), 1);
}

TEST(ParseMatrix, FencedRows) {
  auto r = parse_matrix("**Game State:**\n```\n1 0 -1\n-1 -1 0\n0 0 1\n```", GameKind::TicTacToe);
  ASSERT_TRUE(r.ok()) << r.error;
  EXPECT_EQ(r.matrix().at(2, 2), 1);
}

TEST(ParseMatrix, LatexBmatrix) {
  auto r = parse_matrix("Game State: $\\begin{bmatrix} 1 & 0 & -1 \\\\ 0 & 0 & 0 \\\\ 1 & 1 & 1 \\end{bmatrix}$",
                        GameKind::TicTacToe);
  ASSERT_TRUE(r.ok()) << r.error;
  EXPECT_EQ(r.matrix().at(0, 2), -1);
}

TEST(ParseMatrix, NoMarkerUsesLastBracketBlock) {
  auto r = parse_matrix("I think it is [[0,0,0],[1,1,1],[-1,-1,-1]].", GameKind::TicTacToe);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.matrix().at(1, 0), 1);
}

TEST(ParseMatrix, WrongDimensionsRejected) {
  std::string rows;
  for (int r = 0; r < 15; ++r) {
    rows += std::string(r ? ", " : "") + "[";
    for (int c = 0; c < 16; ++c) rows += std::string(c ? ", " : "") + "0";
    rows += "]";
  }
  auto r = parse_matrix("Game State: [" + rows + "]", GameKind::Gomoku);
  EXPECT_FALSE(r.ok());
  EXPECT_NE(r.error.find("columns"), std::string::npos);
}

TEST(ParseMatrix, NonIntegerRejected) {
  EXPECT_FALSE(parse_matrix("Game State: [[X, O, -1], [0,0,0], [1,1,1]]", GameKind::TicTacToe).ok());
  EXPECT_FALSE(parse_matrix("no matrix at all", GameKind::TicTacToe).ok());
}

TEST(ParseMatrix, OutOfAlphabetKeptButScoresZeroThere) {
  auto r = parse_matrix("Game State: [[7, 0, 0], [0, 0, 0], [0, 0, 0]]", GameKind::TicTacToe);
  ASSERT_TRUE(r.ok());
  const auto gt = BoardMatrix::filled(GameKind::TicTacToe, 0);
  EXPECT_NEAR(score_perceiving(r, gt), 8.0 / 9.0, 1e-12);
}

TEST(ParseAnswer, Variants) {
  EXPECT_EQ(parse_answer("Answer: B").letter(), 'B');
  EXPECT_EQ(parse_answer("The answer is (c).").letter(), 'C');
  EXPECT_EQ(parse_answer("**Answer:** D").letter(), 'D');
  EXPECT_EQ(parse_answer("Reasoning...\nA").letter(), 'A');
  EXPECT_FALSE(parse_answer("Answer: E").ok());
  EXPECT_FALSE(parse_answer("I cannot tell").ok());
}

TEST(ParseMove, CellGames) {
  auto r = parse_move("Movement: B2", GameKind::TicTacToe);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(std::get<CellMove>(r.move().payload).cell, (CellCoord{1, 1}));
  EXPECT_TRUE(parse_move("movement: 2b", GameKind::TicTacToe).ok());
  EXPECT_FALSE(parse_move("Movement: D4", GameKind::TicTacToe).ok());
  EXPECT_FALSE(parse_move("B2", GameKind::TicTacToe).ok());
  auto g = parse_move("Movement: H8", GameKind::Gomoku);
  ASSERT_TRUE(g.ok());
  EXPECT_EQ(std::get<CellMove>(g.move().payload).cell, (CellCoord{7, 7}));
}

TEST(ParseMove, SudokuAndChess) {
  auto s = parse_move("Movement: C5 7", GameKind::Sudoku);
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(std::get<DigitMove>(s.move().payload).digit, 7);
  EXPECT_FALSE(parse_move("Movement: C5", GameKind::Sudoku).ok());
  auto c = parse_move("Movement: 1. Nf3", GameKind::Chess);
  ASSERT_TRUE(c.ok()) << c.error;
  EXPECT_EQ(std::get<SanMove>(c.move().payload).san, "Nf3");
  EXPECT_TRUE(parse_move("Movement: e8=Q+", GameKind::Chess).ok());
  EXPECT_TRUE(parse_move("Movement: O-O", GameKind::Chess).ok());
  EXPECT_FALSE(parse_move("Movement: knight to f3", GameKind::Chess).ok());
}

TEST(ParseMove, E2ETriple) {
  auto r = parse_move("Observation: empty board\nStrategy: take the centre\nMovement: B2", GameKind::TicTacToe, true);
  ASSERT_TRUE(r.ok());
  ASSERT_TRUE(r.triple);
  EXPECT_EQ(r.triple->observation, "empty board");
  EXPECT_EQ(r.triple->strategy, "take the centre");
  EXPECT_EQ(r.triple->movement, "B2");
}

TEST(RuleValidity, ReversiNonFlippingPlacementInvalid) {
  const GameState s = initial_state(GameKind::Reversi, Seed{1});
  EXPECT_FALSE(validate_rule_move(parse_move("Movement: A1", GameKind::Reversi), s));
  int legal = 0;
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      legal += validate_rule_move(parse_move("Movement: " + coord_to_label(GameKind::Reversi, {r, c}), GameKind::Reversi), s);
    }
  }
  EXPECT_EQ(legal, 4);
}

namespace {

E2ESessionLog finished(const GameState& s, int moves, bool struck) {
  E2ESessionLog log;
  log.kind = s.kind();
  log.model_moves = moves;
  log.struck_out = struck;
  log.outcome = struck ? Outcome::loss(Side::First) : terminal_status(s);
  log.final_state = s;
  return log;
}

}  // namespace

TEST(E2EScore, ReversiStrikeOutIsForty) {
  EXPECT_EQ(score_e2e(finished(initial_state(GameKind::Reversi, Seed{3}), 0, true)), 40.0);
}

TEST(E2EScore, TicTacToeOneMoveLossIsTen) {
  EXPECT_EQ(score_e2e(finished(initial_state(GameKind::TicTacToe, Seed{0}), 1, true)), 10.0);
}

TEST(E2EScore, ChessExample) {
  GameState s = initial_state(GameKind::Chess, Seed{0});
  auto d = s.as<ChessData>();
  E2ESessionLog log;
  log.kind = GameKind::Chess;
  log.model_moves = 10;
  log.outcome = Outcome::win(Side::First);
  // pawn (1) + knight (3) captured: 10*10 + 5*4 + 1000
  d.captured_black_value = 4;
  log.final_state = GameState(GameKind::Chess, Seed{0}, d, Side::First);
  EXPECT_EQ(score_e2e(log), 1120.0);
}

TEST(E2EScore, OngoingRejected) {
  E2ESessionLog log;
  log.kind = GameKind::TicTacToe;
  log.final_state = initial_state(GameKind::TicTacToe, Seed{0});
  EXPECT_THROW(score_e2e(log), Error);
}

TEST(E2EScore, NormalizationClamped) {
  EXPECT_EQ(normalize_e2e(GameKind::TicTacToe, 100), 1.0);
  EXPECT_EQ(normalize_e2e(GameKind::Chess, 5000), 1.0);
  EXPECT_NEAR(normalize_e2e(GameKind::Reversi, 40), 40.0 / 2880.0, 1e-12);
}

TEST(Aggregate, WeightsAndMissingGames) {
  const auto stars = printed_star_table();
  // Perceiving weights are the perception stars alone.
  EXPECT_EQ(task_weight(stars, GameKind::Chess, TaskKind::Perceiving), 3.5);
  EXPECT_EQ(task_weight(stars, GameKind::Sudoku, TaskKind::E2E), (3.5 + 2.0 + 2.0) / 3);
  std::map<GameKind, double> all;
  for (GameKind g : kAllGames) all[g] = 1.0;
  EXPECT_NEAR(aggregate_overall(TaskKind::QA, all, stars), 1.0, 1e-12);
  all.erase(GameKind::Chess);
  EXPECT_THROW(aggregate_overall(TaskKind::QA, all, stars), Error);
  std::map<GameKind, double> two{{GameKind::TicTacToe, 1.0}, {GameKind::Gomoku, 0.0}};
  EXPECT_NEAR(aggregate_overall(TaskKind::Perceiving, two, stars, {}), 0.5 / 5.5, 1e-12);
}
