#include "boardeval/render.hpp"

#include <algorithm>
#include <cstdlib>

#include <png.h>

namespace boardeval {

namespace {

struct Glyph {
  char ch;
  std::array<std::uint8_t, 7> rows;
};

constexpr Glyph kFont[] = {
    {'0', {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E}}, {'1', {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E}},
    {'2', {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F}}, {'3', {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E}},
    {'4', {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02}}, {'5', {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E}},
    {'6', {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E}}, {'7', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08}},
    {'8', {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E}}, {'9', {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C}},
    {'A', {0x0E, 0x11, 0x11, 0x11, 0x1F, 0x11, 0x11}}, {'B', {0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E}},
    {'C', {0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E}}, {'D', {0x1C, 0x12, 0x11, 0x11, 0x11, 0x12, 0x1C}},
    {'E', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F}}, {'F', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10}},
    {'G', {0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0F}}, {'H', {0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}},
    {'I', {0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E}}, {'J', {0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0C}},
    {'K', {0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11}}, {'L', {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F}},
    {'M', {0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11}}, {'N', {0x11, 0x11, 0x19, 0x15, 0x13, 0x11, 0x11}},
    {'O', {0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}}, {'P', {0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10}},
    {'Q', {0x0E, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0D}}, {'R', {0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11}},
    {'S', {0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E}}, {'T', {0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04}},
    {'U', {0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}}, {'V', {0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04}},
    {'W', {0x11, 0x11, 0x11, 0x15, 0x15, 0x15, 0x0A}}, {'X', {0x11, 0x11, 0x0A, 0x04, 0x0A, 0x11, 0x11}},
    {'Y', {0x11, 0x11, 0x11, 0x0A, 0x04, 0x04, 0x04}}, {'Z', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1F}},
    {'a', {0x00, 0x00, 0x0E, 0x01, 0x0F, 0x11, 0x0F}}, {'b', {0x10, 0x10, 0x16, 0x19, 0x11, 0x11, 0x1E}},
    {'c', {0x00, 0x00, 0x0E, 0x10, 0x10, 0x11, 0x0E}}, {'d', {0x01, 0x01, 0x0D, 0x13, 0x11, 0x11, 0x0F}},
    {'e', {0x00, 0x00, 0x0E, 0x11, 0x1F, 0x10, 0x0E}}, {'f', {0x06, 0x09, 0x08, 0x1C, 0x08, 0x08, 0x08}},
    {'g', {0x00, 0x0F, 0x11, 0x11, 0x0F, 0x01, 0x0E}}, {'h', {0x10, 0x10, 0x16, 0x19, 0x11, 0x11, 0x11}},
    {'-', {0x00, 0x00, 0x00, 0x1F, 0x00, 0x00, 0x00}},
};

// 16x16 piece silhouettes; the outline is derived by dilation.
constexpr const char* kSprites[6][16] = {
    {"................", "................", "................", ".......##.......", "......####......",
     "......####......", ".......##.......", "......####......", ".......##.......", ".......##.......",
     "......####......", ".....######.....", "....########....", "....########....", "................",
     "................"},
    {"................", "................", "......##........", ".....####.......", "....######......",
     "...###.####.....", "...########.....", "......#####.....", ".....######.....", "....#######.....",
     "....#######.....", "....#######.....", "...#########....", "...#########....", "................",
     "................"},
    {"................", ".......##.......", "......####......", ".....##.###.....", ".....#.####.....",
     ".....######.....", "......####......", ".......##.......", "......####......", ".......##.......",
     ".......##.......", "......####......", "....########....", "....########....", "................",
     "................"},
    {"................", "................", "...##..##..##...", "...##########...", "....########....",
     ".....######.....", ".....######.....", ".....######.....", ".....######.....", ".....######.....",
     "....########....", "...##########...", "...##########...", "................", "................",
     "................"},
    {"................", "...#...##...#...", "...##..##..##...", "...###.##.###...", "....########....",
     "....########....", ".....######.....", ".....######.....", "......####......", "......####......",
     ".....######.....", "....########....", "...##########...", "...##########...", "................",
     "................"},
    {"................", ".......##.......", "......####......", ".......##.......", "....##.##.##....",
     "...####..####...", "...##########...", "...##########...", "....########....", ".....######.....",
     ".....######.....", "....########....", "...##########...", "...##########...", "................",
     "................"},
};

bool sprite_body(int type, int x, int y) {
  return x >= 0 && x < 16 && y >= 0 && y < 16 && kSprites[type - 1][y][x] == '#';
}

struct Layout {
  int side, margin, cell, ox, oy, rows, cols, label_scale;
};

Layout layout_for(GameKind kind, const Theme& theme) {
  Layout l{};
  l.side = theme.side_for(kind);
  l.margin = theme.show_labels ? l.side / 10 : l.side / 40;
  const Dims d = board_dims(kind);
  l.rows = d.rows;
  l.cols = d.cols;
  const int board = l.side - 2 * l.margin;
  l.cell = board / std::max(d.rows, d.cols);
  l.ox = l.margin + (board - l.cell * d.cols) / 2;
  l.oy = l.margin + (board - l.cell * d.rows) / 2;
  l.label_scale = std::max(1, std::min(l.margin / 12, l.cell / 8));
  return l;
}

void draw_digit(Canvas& cv, const PixelRect& r, int digit, Rgb color) {
  const int scale = std::max(1, r.h * 5 / 10 / 7);
  const std::string s = std::to_string(digit);
  cv.text(r.cx() - text_width(s, scale) / 2, r.cy() - 7 * scale / 2, s, scale, color);
}

void draw_piece(Canvas& cv, const PixelRect& r, int piece, const Theme& theme) {
  const int type = std::abs(piece);
  const Rgb body = theme.color(piece > 0 ? "white_piece" : "black_piece");
  const Rgb edge = theme.color(piece > 0 ? "white_piece_outline" : "black_piece_outline");
  const int size = r.w * 9 / 10;
  const int x0 = r.x + (r.w - size) / 2, y0 = r.y + (r.h - size) / 2;
  for (int py = 0; py < size; ++py) {
    for (int px = 0; px < size; ++px) {
      const int sx = px * 16 / size, sy = py * 16 / size;
      if (sprite_body(type, sx, sy)) {
        cv.set(x0 + px, y0 + py, body);
      } else if (sprite_body(type, sx - 1, sy) || sprite_body(type, sx + 1, sy) || sprite_body(type, sx, sy - 1) ||
                 sprite_body(type, sx, sy + 1)) {
        cv.set(x0 + px, y0 + py, edge);
      }
    }
  }
}

void draw_labels(Canvas& cv, GameKind kind, const Theme& theme) {
  if (!theme.show_labels) return;
  const Dims d = board_dims(kind);
  const Rgb c = theme.color("label");
  for (int r = 0; r < d.rows; ++r) {
    const auto p = row_label(kind, theme, r);
    cv.text(p.x, p.y, p.text, p.scale, c);
  }
  for (int col = 0; col < d.cols; ++col) {
    const auto p = col_label(kind, theme, col);
    cv.text(p.x, p.y, p.text, p.scale, c);
  }
}

}  // namespace

Rgb Theme::color(const std::string& name) const {
  auto it = palette.find(name);
  if (it == palette.end()) throw Error(ErrorCode::InvalidArgument, "theme has no color '" + name + "'");
  return it->second;
}

Theme default_theme() {
  Theme t;
  t.palette = {
      {"background", {245, 245, 240}},
      {"label", {40, 40, 40}},
      {"grid", {30, 30, 30}},
      {"ttt_board", {255, 255, 255}},
      {"x_mark", {30, 80, 220}},
      {"o_mark", {220, 40, 40}},
      {"reversi_board", {30, 120, 60}},
      {"reversi_grid", {10, 60, 25}},
      {"gomoku_board", {222, 184, 135}},
      {"gomoku_grid", {60, 40, 20}},
      {"black_stone", {20, 20, 20}},
      {"white_stone", {250, 250, 250}},
      {"stone_outline", {60, 60, 60}},
      {"sudoku_cell", {255, 255, 255}},
      {"sudoku_clue", {0, 0, 0}},
      {"sudoku_player", {30, 80, 220}},
      {"mine_hidden", {170, 170, 170}},
      {"mine_hidden_light", {215, 215, 215}},
      {"mine_revealed", {225, 225, 225}},
      {"mine", {0, 0, 0}},
      {"mine_1", {0, 0, 255}},
      {"mine_2", {0, 128, 0}},
      {"mine_3", {255, 0, 0}},
      {"mine_4", {0, 0, 128}},
      {"mine_5", {128, 0, 0}},
      {"mine_6", {0, 128, 128}},
      {"mine_7", {0, 0, 0}},
      {"mine_8", {128, 128, 128}},
      {"chess_light", {240, 217, 181}},
      {"chess_dark", {181, 136, 99}},
      {"white_piece", {255, 255, 255}},
      {"white_piece_outline", {0, 0, 0}},
      {"black_piece", {15, 15, 15}},
      {"black_piece_outline", {200, 200, 200}},
  };
  return t;
}

// Canvas ---------------------------------------------------------------------

Canvas::Canvas(int width, int height, Rgb fill) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) throw Error(ErrorCode::InvalidArgument, "canvas dimensions must be positive");
  rgb_.resize(static_cast<size_t>(width) * static_cast<size_t>(height) * 3);
  for (size_t i = 0; i < rgb_.size(); i += 3) {
    rgb_[i] = fill.r;
    rgb_[i + 1] = fill.g;
    rgb_[i + 2] = fill.b;
  }
}

Rgb Canvas::at(int x, int y) const {
  const size_t i = (static_cast<size_t>(y) * static_cast<size_t>(width_) + static_cast<size_t>(x)) * 3;
  return {rgb_[i], rgb_[i + 1], rgb_[i + 2]};
}

void Canvas::set(int x, int y, Rgb c) {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) return;
  const size_t i = (static_cast<size_t>(y) * static_cast<size_t>(width_) + static_cast<size_t>(x)) * 3;
  rgb_[i] = c.r;
  rgb_[i + 1] = c.g;
  rgb_[i + 2] = c.b;
}

void Canvas::fill_rect(int x, int y, int w, int h, Rgb c) {
  for (int yy = y; yy < y + h; ++yy)
    for (int xx = x; xx < x + w; ++xx) set(xx, yy, c);
}

void Canvas::stroke_rect(int x, int y, int w, int h, int t, Rgb c) {
  fill_rect(x, y, w, t, c);
  fill_rect(x, y + h - t, w, t, c);
  fill_rect(x, y, t, h, c);
  fill_rect(x + w - t, y, t, h, c);
}

void Canvas::fill_circle(int cx, int cy, int radius, Rgb c) { ring(cx, cy, radius, -1, c); }

void Canvas::ring(int cx, int cy, int outer, int inner, Rgb c) {
  const long o2 = static_cast<long>(outer) * outer;
  const long i2 = inner < 0 ? -1 : static_cast<long>(inner) * inner;
  for (int y = cy - outer; y <= cy + outer; ++y) {
    for (int x = cx - outer; x <= cx + outer; ++x) {
      const long d2 = static_cast<long>(x - cx) * (x - cx) + static_cast<long>(y - cy) * (y - cy);
      if (d2 <= o2 && d2 > i2) set(x, y, c);
    }
  }
}

void Canvas::line(int x0, int y0, int x1, int y1, int thickness, Rgb c) {
  const double half = thickness / 2.0;
  const int minx = std::min(x0, x1) - thickness, maxx = std::max(x0, x1) + thickness;
  const int miny = std::min(y0, y1) - thickness, maxy = std::max(y0, y1) + thickness;
  const double dx = x1 - x0, dy = y1 - y0, len2 = dx * dx + dy * dy;
  for (int y = miny; y <= maxy; ++y) {
    for (int x = minx; x <= maxx; ++x) {
      double t = len2 > 0 ? ((x - x0) * dx + (y - y0) * dy) / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      const double px = x0 + t * dx - x, py = y0 + t * dy - y;
      if (px * px + py * py <= half * half) set(x, y, c);
    }
  }
}

const std::array<std::uint8_t, 7>* font_glyph(char ch) {
  for (const auto& g : kFont)
    if (g.ch == ch) return &g.rows;
  return nullptr;
}

int text_width(const std::string& s, int scale) {
  return s.empty() ? 0 : static_cast<int>(s.size()) * 6 * scale - scale;
}

void Canvas::text(int x, int y, const std::string& s, int scale, Rgb c) {
  for (size_t i = 0; i < s.size(); ++i) {
    const auto* g = font_glyph(s[i]);
    if (!g) continue;
    const int gx = x + static_cast<int>(i) * 6 * scale;
    for (int row = 0; row < 7; ++row)
      for (int col = 0; col < 5; ++col)
        if ((*g)[static_cast<size_t>(row)] & (0x10 >> col)) fill_rect(gx + col * scale, y + row * scale, scale, scale, c);
  }
}

// Geometry -------------------------------------------------------------------

PixelRect cell_rect(GameKind kind, const Theme& theme, CellCoord c) {
  if (!in_bounds(kind, c)) throw Error(ErrorCode::OutOfBounds, "cell outside the board");
  const Layout l = layout_for(kind, theme);
  return {l.ox + c.col * l.cell, l.oy + c.row * l.cell, l.cell, l.cell};
}

LabelPlacement row_label(GameKind kind, const Theme& theme, int row) {
  const Layout l = layout_for(kind, theme);
  const std::string label = coord_to_label(kind, {row, 0});
  // The row part of the label: the letter for row-letter games, digits otherwise.
  std::string text;
  if (kind == GameKind::Gomoku || kind == GameKind::Chess) text = label.substr(1);
  else text = label.substr(0, 1);
  const int w = text_width(text, l.label_scale);
  return {text, (l.ox - w) / 2, l.oy + row * l.cell + l.cell / 2 - 7 * l.label_scale / 2, l.label_scale};
}

LabelPlacement col_label(GameKind kind, const Theme& theme, int col) {
  const Layout l = layout_for(kind, theme);
  const std::string label = coord_to_label(kind, {kind == GameKind::Chess ? 7 : 0, col});
  std::string text;
  if (kind == GameKind::Gomoku || kind == GameKind::Chess) text = label.substr(0, 1);
  else text = label.substr(1);
  const int w = text_width(text, l.label_scale);
  const int x = l.ox + col * l.cell + l.cell / 2 - w / 2;
  const int h = 7 * l.label_scale;
  if (kind == GameKind::Chess) {
    const int bottom = l.oy + l.rows * l.cell;
    return {text, x, bottom + (l.side - bottom - h) / 2, l.label_scale};
  }
  return {text, x, (l.oy - h) / 2, l.label_scale};
}

// Rendering ------------------------------------------------------------------

Canvas render_canvas(const BoardMatrix& m, const Theme& theme, const std::bitset<81>* sudoku_clues) {
  const GameKind kind = m.kind();
  const Layout l = layout_for(kind, theme);
  Canvas cv(l.side, l.side, theme.color("background"));
  const int line_w = std::max(1, l.cell / 24);
  auto rect = [&](int r, int c) { return PixelRect{l.ox + c * l.cell, l.oy + r * l.cell, l.cell, l.cell}; };

  switch (kind) {
    case GameKind::TicTacToe: {
      cv.fill_rect(l.ox, l.oy, l.cell * 3, l.cell * 3, theme.color("ttt_board"));
      for (int i = 0; i <= 3; ++i) {
        cv.fill_rect(l.ox + i * l.cell - line_w, l.oy, 2 * line_w, l.cell * 3, theme.color("grid"));
        cv.fill_rect(l.ox, l.oy + i * l.cell - line_w, l.cell * 3, 2 * line_w, theme.color("grid"));
      }
      const int t = std::max(2, l.cell / 10);
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
          const PixelRect p = rect(r, c);
          const int v = m.at(r, c), k = l.cell * 3 / 10;
          if (v == 1) {
            cv.line(p.cx() - k, p.cy() - k, p.cx() + k, p.cy() + k, t, theme.color("x_mark"));
            cv.line(p.cx() - k, p.cy() + k, p.cx() + k, p.cy() - k, t, theme.color("x_mark"));
          } else if (v == 0) {
            cv.ring(p.cx(), p.cy(), l.cell * 35 / 100, l.cell * 35 / 100 - t, theme.color("o_mark"));
          }
        }
      }
      break;
    }
    case GameKind::Reversi: {
      cv.fill_rect(l.ox, l.oy, l.cell * 8, l.cell * 8, theme.color("reversi_board"));
      for (int i = 0; i <= 8; ++i) {
        cv.fill_rect(l.ox + i * l.cell - line_w / 2, l.oy, std::max(1, line_w), l.cell * 8, theme.color("reversi_grid"));
        cv.fill_rect(l.ox, l.oy + i * l.cell - line_w / 2, l.cell * 8, std::max(1, line_w), theme.color("reversi_grid"));
      }
      for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
          const int v = m.at(r, c);
          if (!v) continue;
          const PixelRect p = rect(r, c);
          const int rad = l.cell * 42 / 100;
          cv.fill_circle(p.cx(), p.cy(), rad, theme.color("stone_outline"));
          cv.fill_circle(p.cx(), p.cy(), rad - 1, theme.color(v == 1 ? "black_stone" : "white_stone"));
        }
      }
      break;
    }
    case GameKind::Gomoku: {
      cv.fill_rect(l.ox, l.oy, l.cell * 15, l.cell * 15, theme.color("gomoku_board"));
      const int half = l.cell / 2;
      for (int i = 0; i < 15; ++i) {
        cv.fill_rect(l.ox + i * l.cell + half, l.oy + half, 1, l.cell * 14 + 1, theme.color("gomoku_grid"));
        cv.fill_rect(l.ox + half, l.oy + i * l.cell + half, l.cell * 14 + 1, 1, theme.color("gomoku_grid"));
      }
      for (int r : {3, 7, 11})
        for (int c : {3, 7, 11}) cv.fill_circle(rect(r, c).cx(), rect(r, c).cy(), std::max(2, l.cell / 10), theme.color("gomoku_grid"));
      for (int r = 0; r < 15; ++r) {
        for (int c = 0; c < 15; ++c) {
          const int v = m.at(r, c);
          if (!v) continue;
          const PixelRect p = rect(r, c);
          const int rad = l.cell * 45 / 100;
          cv.fill_circle(p.cx(), p.cy(), rad, theme.color("stone_outline"));
          cv.fill_circle(p.cx(), p.cy(), rad - 1, theme.color(v == 1 ? "black_stone" : "white_stone"));
        }
      }
      break;
    }
    case GameKind::Sudoku: {
      cv.fill_rect(l.ox, l.oy, l.cell * 9, l.cell * 9, theme.color("sudoku_cell"));
      for (int i = 0; i <= 9; ++i) {
        const int t = i % 3 == 0 ? std::max(2, line_w * 3) : std::max(1, line_w);
        cv.fill_rect(l.ox + i * l.cell - t / 2, l.oy - t / 2, t, l.cell * 9 + t, theme.color("grid"));
        cv.fill_rect(l.ox - t / 2, l.oy + i * l.cell - t / 2, l.cell * 9 + t, t, theme.color("grid"));
      }
      for (int r = 0; r < 9; ++r) {
        for (int c = 0; c < 9; ++c) {
          const int v = m.at(r, c);
          if (!v) continue;
          const bool clue = !sudoku_clues || (*sudoku_clues)[static_cast<size_t>(r * 9 + c)];
          draw_digit(cv, rect(r, c), v, theme.color(clue ? "sudoku_clue" : "sudoku_player"));
        }
      }
      break;
    }
    case GameKind::Minesweeper: {
      for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
          const PixelRect p = rect(r, c);
          const int v = m.at(r, c);
          if (v == -1) {
            cv.fill_rect(p.x, p.y, p.w, p.h, theme.color("mine_hidden_light"));
            const int bevel = std::max(2, l.cell / 12);
            cv.fill_rect(p.x + bevel, p.y + bevel, p.w - bevel, p.h - bevel, theme.color("grid"));
            cv.fill_rect(p.x + bevel, p.y + bevel, p.w - 2 * bevel, p.h - 2 * bevel, theme.color("mine_hidden"));
          } else {
            cv.fill_rect(p.x, p.y, p.w, p.h, theme.color("mine_revealed"));
            cv.stroke_rect(p.x, p.y, p.w, p.h, 1, theme.color("mine_hidden"));
            if (v == 9) {
              cv.fill_circle(p.cx(), p.cy(), l.cell * 3 / 10, theme.color("mine"));
              cv.fill_circle(p.cx() - l.cell / 10, p.cy() - l.cell / 10, std::max(1, l.cell / 16), theme.color("white_stone"));
            } else if (v > 0) {
              draw_digit(cv, p, v, theme.color("mine_" + std::to_string(v)));
            }
          }
        }
      }
      break;
    }
    case GameKind::Chess: {
      for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
          const PixelRect p = rect(r, c);
          cv.fill_rect(p.x, p.y, p.w, p.h, theme.color((r + c) % 2 == 0 ? "chess_light" : "chess_dark"));
          if (m.at(r, c)) draw_piece(cv, p, m.at(r, c), theme);
        }
      }
      break;
    }
  }
  draw_labels(cv, kind, theme);
  return cv;
}

std::vector<std::uint8_t> encode_png(const Canvas& canvas) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw Error(ErrorCode::Io, "png: cannot allocate writer");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error(ErrorCode::Io, "png: cannot allocate info");
  }
  std::vector<std::uint8_t> out;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorCode::Io, "png: encoding failed");
  }
  png_set_write_fn(
      png, &out,
      [](png_structp p, png_bytep data, png_size_t len) {
        auto* v = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(p));
        v->insert(v->end(), data, data + len);
      },
      nullptr);
  png_set_IHDR(png, info, static_cast<png_uint_32>(canvas.width()), static_cast<png_uint_32>(canvas.height()), 8,
               PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_set_compression_level(png, 6);
  png_write_info(png, info);
  const auto& px = canvas.pixels();
  for (int y = 0; y < canvas.height(); ++y) {
    png_write_row(png, const_cast<png_bytep>(px.data() + static_cast<size_t>(y) * static_cast<size_t>(canvas.width()) * 3));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

std::vector<std::uint8_t> render_board(const BoardMatrix& m, const Theme& theme) {
  return encode_png(render_canvas(m, theme));
}

std::vector<std::uint8_t> render_board(const GameState& s, const Theme& theme) {
  const BoardMatrix m = encode_board(s);
  if (s.kind() == GameKind::Sudoku) return encode_png(render_canvas(m, theme, &s.as<SudokuData>().clues));
  return encode_png(render_canvas(m, theme));
}

}  // namespace boardeval
