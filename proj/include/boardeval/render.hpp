#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "boardeval/core.hpp"
#include "boardeval/engines.hpp"

namespace boardeval {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb&) const = default;
};

struct Theme {
  int image_px = 480;
  int gomoku_image_px = 600;
  bool show_labels = true;
  std::map<std::string, Rgb> palette;

  Rgb color(const std::string& name) const;
  int side_for(GameKind kind) const { return kind == GameKind::Gomoku ? gomoku_image_px : image_px; }
};

/// Default palette. X blue, O red; Minesweeper numbers in the classic colors.
Theme default_theme();

class Canvas {
 public:
  Canvas(int width, int height, Rgb fill);

  int width() const { return width_; }
  int height() const { return height_; }
  Rgb at(int x, int y) const;
  const std::vector<std::uint8_t>& pixels() const { return rgb_; }

  void set(int x, int y, Rgb c);
  void fill_rect(int x, int y, int w, int h, Rgb c);
  void stroke_rect(int x, int y, int w, int h, int thickness, Rgb c);
  void fill_circle(int cx, int cy, int radius, Rgb c);
  void ring(int cx, int cy, int outer, int inner, Rgb c);
  void line(int x0, int y0, int x1, int y1, int thickness, Rgb c);
  /// Embedded 5x7 font, `scale` pixels per font pixel, top-left anchored.
  void text(int x, int y, const std::string& s, int scale, Rgb c);

 private:
  int width_, height_;
  std::vector<std::uint8_t> rgb_;
};

/// 5x7 glyph rows (bit 4 = leftmost) for the characters the renderer uses.
const std::array<std::uint8_t, 7>* font_glyph(char ch);
int text_width(const std::string& s, int scale);

struct PixelRect {
  int x = 0, y = 0, w = 0, h = 0;
  int cx() const { return x + w / 2; }
  int cy() const { return y + h / 2; }
};

/// Screen rectangle of a cell (for Gomoku, the square centred on the
/// intersection).
PixelRect cell_rect(GameKind kind, const Theme& theme, CellCoord c);
/// Where the row and column labels of a cell are drawn, and at what scale.
struct LabelPlacement {
  std::string text;
  int x = 0, y = 0, scale = 1;
};
LabelPlacement row_label(GameKind kind, const Theme& theme, int row);
LabelPlacement col_label(GameKind kind, const Theme& theme, int col);

/// Sudoku clue mask is optional: filled cells outside it are drawn as player digits.
Canvas render_canvas(const BoardMatrix& m, const Theme& theme, const std::bitset<81>* sudoku_clues = nullptr);

std::vector<std::uint8_t> encode_png(const Canvas& canvas);

std::vector<std::uint8_t> render_board(const BoardMatrix& m, const Theme& theme);
std::vector<std::uint8_t> render_board(const GameState& s, const Theme& theme);

}  // namespace boardeval
