#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace boardeval::chess {

// Piece codes match the perceiving encoding: white 1..6, black -1..-6.
enum PieceType : int { Pawn = 1, Knight = 2, Bishop = 3, Rook = 4, Queen = 5, King = 6 };

enum MoveFlag : std::uint8_t {
  kQuiet = 0,
  kCapture = 1,
  kEnPassant = 2,
  kCastle = 4,
  kDoublePush = 8,
};

/// Square index = row * 8 + col with row 0 = rank 8 (top of the image).
struct Move {
  int from = 0;
  int to = 0;
  int promotion = 0;  // PieceType or 0
  std::uint8_t flags = kQuiet;
  bool operator==(const Move&) const = default;
};

enum CastleRight : int { kWhiteKingside = 1, kWhiteQueenside = 2, kBlackKingside = 4, kBlackQueenside = 8 };

std::string square_name(int sq);
int parse_square(std::string_view name);  // -1 on failure

class Position {
 public:
  static Position start();
  /// Throws boardeval::Error{Unparseable} on malformed FEN.
  static Position from_fen(std::string_view fen);

  std::string fen() const;
  /// Board, side, castling and en-passant fields; the basis for repetition.
  std::string repetition_key() const;

  int piece(int sq) const { return board_[static_cast<size_t>(sq)]; }
  const std::array<int, 64>& board() const { return board_; }
  bool white_to_move() const { return white_to_move_; }
  int castling() const { return castling_; }
  int en_passant() const { return ep_square_; }
  int halfmove_clock() const { return halfmove_; }
  int fullmove_number() const { return fullmove_; }

  std::vector<Move> legal_moves() const;
  std::vector<Move> pseudo_legal_moves() const;
  int pseudo_mobility(bool white) const;

  void make(const Move& m);
  Position after(const Move& m) const {
    Position p = *this;
    p.make(m);
    return p;
  }

  bool in_check() const;
  bool square_attacked(int sq, bool by_white) const;
  bool insufficient_material() const;
  int king_square(bool white) const;

  /// SAN including '+' / '#' suffixes.
  std::string san(const Move& m) const;
  /// Resolves SAN against the legal move list; tolerates check suffixes,
  /// annotation marks, "0-0" castling and promotions written without '='.
  std::optional<Move> parse_san(std::string_view text) const;
  std::string uci(const Move& m) const;
  std::optional<Move> parse_uci(std::string_view text) const;

 private:
  void generate(std::vector<Move>& out, bool white) const;
  bool legal_after(const Move& m) const;

  std::array<int, 64> board_{};
  bool white_to_move_ = true;
  int castling_ = 0;
  int ep_square_ = -1;
  int halfmove_ = 0;
  int fullmove_ = 1;
};

std::uint64_t perft(const Position& pos, int depth);

/// Standard material values used for capture scoring and search: P1 N3 B3 R5 Q9.
int material_value(int piece);

}  // namespace boardeval::chess
