#include <gtest/gtest.h>

#include "boardeval/hash.hpp"
#include "boardeval/render.hpp"
#include "boardeval/statesgen.hpp"

using namespace boardeval;

namespace {

// Reads the glyphs drawn at a label placement back out of the canvas.
std::string ocr(const Canvas& cv, const LabelPlacement& p, size_t chars, Rgb ink) {
  std::string out;
  for (size_t i = 0; i < chars; ++i) {
    std::array<std::uint8_t, 7> rows{};
    const int gx = p.x + static_cast<int>(i) * 6 * p.scale;
    for (int r = 0; r < 7; ++r)
      for (int c = 0; c < 5; ++c) {
        const int x = gx + c * p.scale + p.scale / 2, y = p.y + r * p.scale + p.scale / 2;
        if (cv.at(x, y) == ink) rows[r] |= static_cast<std::uint8_t>(0x10 >> c);
      }
    char found = '?';
    for (char ch : std::string("0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefgh"))
      if (font_glyph(ch) && *font_glyph(ch) == rows) found = ch;
    out += found;
  }
  return out;
}

}  // namespace

TEST(Render, PngSignatureAndSize) {
  const Theme t = default_theme();
  const auto png = render_board(BoardMatrix::empty(GameKind::TicTacToe), t);
  ASSERT_GT(png.size(), 8u);
  EXPECT_EQ(png[1], 'P');
  EXPECT_EQ(png[2], 'N');
  EXPECT_EQ(png[3], 'G');
  const Canvas g = render_canvas(BoardMatrix::empty(GameKind::Gomoku), t);
  EXPECT_EQ(g.width(), 600);
  EXPECT_EQ(render_canvas(BoardMatrix::empty(GameKind::Chess), t).width(), 480);
}

TEST(Render, Deterministic) {
  const Theme t = default_theme();
  for (GameKind k : kAllGames) {
    const auto m = random_perception_state(default_profile(k, GenMode::PerceptionRandom), Seed{12});
    EXPECT_EQ(render_board(m, t), render_board(m, t));
  }
}

TEST(Render, EmptyTicTacToeGolden) {
  EXPECT_EQ(sha256_hex(render_board(BoardMatrix::empty(GameKind::TicTacToe), default_theme())), TTT_GOLDEN);
}

TEST(Render, LabelsMatchCodec) {
  const Theme t = default_theme();
  for (GameKind k : kAllGames) {
    const Canvas cv = render_canvas(BoardMatrix::empty(k), t);
    const Dims d = board_dims(k);
    for (int r = 0; r < d.rows; ++r) {
      const auto p = row_label(k, t, r);
      const std::string read = ocr(cv, p, p.text.size(), t.color("label"));
      const std::string label = coord_to_label(k, {r, 0});
      const std::string part = (k == GameKind::Gomoku || k == GameKind::Chess) ? label.substr(1) : label.substr(0, 1);
      EXPECT_EQ(read, part) << game_id(k) << " row " << r;
      const auto cell = cell_rect(k, t, {r, 0});
      EXPECT_LT(std::abs(p.y + 7 * p.scale / 2 - cell.cy()), p.scale + 1);
    }
    for (int c = 0; c < d.cols; ++c) {
      const auto p = col_label(k, t, c);
      const std::string read = ocr(cv, p, p.text.size(), t.color("label"));
      const std::string label = coord_to_label(k, {0, c});
      const std::string part = (k == GameKind::Gomoku || k == GameKind::Chess) ? label.substr(0, 1) : label.substr(1);
      EXPECT_EQ(read, part) << game_id(k) << " col " << c;
    }
  }
}

TEST(Render, MarkColorsAtCells) {
  const Theme t = default_theme();
  const auto m = BoardMatrix::empty(GameKind::TicTacToe).with({0, 0}, 1).with({2, 2}, 0);
  const Canvas cv = render_canvas(m, t);
  const auto x = cell_rect(GameKind::TicTacToe, t, {0, 0});
  EXPECT_EQ(cv.at(x.cx(), x.cy()), t.color("x_mark"));
  const auto o = cell_rect(GameKind::TicTacToe, t, {2, 2});
  EXPECT_EQ(cv.at(o.cx(), o.cy()), t.color("ttt_board"));
  EXPECT_EQ(cv.at(o.cx() + o.w * 35 / 100 - 2, o.cy()), t.color("o_mark"));

  auto stones = BoardMatrix::empty(GameKind::Gomoku).with({7, 7}, 1).with({0, 14}, 2);
  const Canvas g = render_canvas(stones, t);
  EXPECT_EQ(g.at(cell_rect(GameKind::Gomoku, t, {7, 7}).cx(), cell_rect(GameKind::Gomoku, t, {7, 7}).cy()),
            t.color("black_stone"));
  EXPECT_EQ(g.at(cell_rect(GameKind::Gomoku, t, {0, 14}).cx(), cell_rect(GameKind::Gomoku, t, {0, 14}).cy()),
            t.color("white_stone"));
}

TEST(Render, SudokuCluesAndPlayerDigitsDiffer) {
  const Theme t = default_theme();
  auto s = initial_state(GameKind::Sudoku, Seed{2});
  const auto moves = legal_moves(s);
  s = apply_move(s, moves.front());
  const auto cell = std::get<DigitMove>(moves.front().payload).cell;
  const Canvas cv = render_canvas(encode_board(s), t, &s.as<SudokuData>().clues);
  const auto r = cell_rect(GameKind::Sudoku, t, cell);
  bool blue = false;
  for (int y = r.y; y < r.y + r.h; ++y)
    for (int x = r.x; x < r.x + r.w; ++x) blue |= cv.at(x, y) == t.color("sudoku_player");
  EXPECT_TRUE(blue);
  EXPECT_NE(render_board(s, t), render_board(encode_board(s), t));
}

TEST(Render, NoLabelsTheme) {
  Theme t = default_theme();
  t.show_labels = false;
  const Canvas cv = render_canvas(BoardMatrix::empty(GameKind::Reversi), t);
  EXPECT_EQ(cv.at(2, 2), t.color("background"));
  EXPECT_NE(render_board(BoardMatrix::empty(GameKind::Reversi), t),
            render_board(BoardMatrix::empty(GameKind::Reversi), default_theme()));
}

TEST(Hash, KnownVector) {
  EXPECT_EQ(sha256_hex(std::string_view("abc")), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
