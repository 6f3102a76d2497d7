#include "boardeval/chess.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

#include "boardeval/core.hpp"

namespace boardeval::chess {

namespace {

constexpr int kKnightSteps[8][2] = {{-2, -1}, {-2, 1}, {-1, -2}, {-1, 2},
                                    {1, -2},  {1, 2},  {2, -1},  {2, 1}};
constexpr int kKingSteps[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                                  {0, 1},   {1, -1}, {1, 0},  {1, 1}};
constexpr int kDiagonal[4][2] = {{-1, -1}, {-1, 1}, {1, -1}, {1, 1}};
constexpr int kOrthogonal[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
constexpr int kPromotions[4] = {Queen, Rook, Bishop, Knight};

constexpr int kWhiteKingStart = 60, kBlackKingStart = 4;
constexpr int kA1 = 56, kH1 = 63, kA8 = 0, kH8 = 7;

inline int sq_of(int r, int c) { return r * 8 + c; }
inline bool on_board(int r, int c) { return r >= 0 && r < 8 && c >= 0 && c < 8; }
inline bool is_white(int p) { return p > 0; }
inline bool is_black(int p) { return p < 0; }
inline bool belongs(int p, bool white) { return white ? p > 0 : p < 0; }

char piece_letter(int type) {
  static constexpr char kLetters[] = " PNBRQK";
  return kLetters[type];
}

int piece_from_fen_char(char ch) {
  const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  int type = 0;
  switch (lower) {
    case 'p': type = Pawn; break;
    case 'n': type = Knight; break;
    case 'b': type = Bishop; break;
    case 'r': type = Rook; break;
    case 'q': type = Queen; break;
    case 'k': type = King; break;
    default: return 0;
  }
  return std::isupper(static_cast<unsigned char>(ch)) ? type : -type;
}

char fen_char(int piece) {
  const char ch = "?pnbrqk"[std::abs(piece)];
  return piece > 0 ? static_cast<char>(std::toupper(static_cast<unsigned char>(ch))) : ch;
}

}  // namespace

std::string square_name(int sq) {
  std::string s;
  s += static_cast<char>('a' + sq % 8);
  s += static_cast<char>('0' + (8 - sq / 8));
  return s;
}

int parse_square(std::string_view name) {
  if (name.size() != 2) return -1;
  const char f = static_cast<char>(std::tolower(static_cast<unsigned char>(name[0])));
  const char r = name[1];
  if (f < 'a' || f > 'h' || r < '1' || r > '8') return -1;
  return sq_of(8 - (r - '0'), f - 'a');
}

int material_value(int piece) {
  switch (std::abs(piece)) {
    case Pawn: return 1;
    case Knight:
    case Bishop: return 3;
    case Rook: return 5;
    case Queen: return 9;
    default: return 0;
  }
}

Position Position::start() {
  return from_fen("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1");
}

Position Position::from_fen(std::string_view fen) {
  std::istringstream in{std::string(fen)};
  std::string placement, side, castle = "-", ep = "-";
  int half = 0, full = 1;
  if (!(in >> placement >> side)) throw Error(ErrorCode::Unparseable, "FEN: missing fields");
  in >> castle >> ep;
  if (!(in >> half)) half = 0;
  if (!(in >> full)) full = 1;

  Position p;
  int r = 0, c = 0;
  for (char ch : placement) {
    if (ch == '/') {
      if (c != 8) throw Error(ErrorCode::Unparseable, "FEN: short rank");
      ++r;
      c = 0;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      c += ch - '0';
    } else {
      const int piece = piece_from_fen_char(ch);
      if (!piece || !on_board(r, c)) throw Error(ErrorCode::Unparseable, "FEN: bad placement");
      p.board_[static_cast<size_t>(sq_of(r, c))] = piece;
      ++c;
    }
    if (c > 8) throw Error(ErrorCode::Unparseable, "FEN: long rank");
  }
  if (r != 7 || c != 8) throw Error(ErrorCode::Unparseable, "FEN: wrong rank count");
  if (side != "w" && side != "b") throw Error(ErrorCode::Unparseable, "FEN: bad side");
  p.white_to_move_ = side == "w";
  if (castle != "-") {
    for (char ch : castle) {
      switch (ch) {
        case 'K': p.castling_ |= kWhiteKingside; break;
        case 'Q': p.castling_ |= kWhiteQueenside; break;
        case 'k': p.castling_ |= kBlackKingside; break;
        case 'q': p.castling_ |= kBlackQueenside; break;
        default: throw Error(ErrorCode::Unparseable, "FEN: bad castling field");
      }
    }
  }
  p.ep_square_ = ep == "-" ? -1 : parse_square(ep);
  if (ep != "-" && p.ep_square_ < 0) throw Error(ErrorCode::Unparseable, "FEN: bad en passant");
  p.halfmove_ = half;
  p.fullmove_ = full;
  return p;
}

std::string Position::fen() const {
  std::string out;
  for (int r = 0; r < 8; ++r) {
    int gap = 0;
    for (int c = 0; c < 8; ++c) {
      const int piece = board_[static_cast<size_t>(sq_of(r, c))];
      if (!piece) {
        ++gap;
        continue;
      }
      if (gap) out += static_cast<char>('0' + gap);
      gap = 0;
      out += fen_char(piece);
    }
    if (gap) out += static_cast<char>('0' + gap);
    if (r < 7) out += '/';
  }
  out += white_to_move_ ? " w " : " b ";
  std::string castle;
  if (castling_ & kWhiteKingside) castle += 'K';
  if (castling_ & kWhiteQueenside) castle += 'Q';
  if (castling_ & kBlackKingside) castle += 'k';
  if (castling_ & kBlackQueenside) castle += 'q';
  out += castle.empty() ? "-" : castle;
  out += ' ';
  out += ep_square_ >= 0 ? square_name(ep_square_) : "-";
  out += ' ' + std::to_string(halfmove_) + ' ' + std::to_string(fullmove_);
  return out;
}

std::string Position::repetition_key() const {
  // The en-passant square only distinguishes positions when a capture is
  // actually available.
  Position copy = *this;
  bool ep_capture = false;
  if (ep_square_ >= 0) {
    for (const Move& m : legal_moves()) {
      if (m.flags & kEnPassant) ep_capture = true;
    }
  }
  if (!ep_capture) copy.ep_square_ = -1;
  copy.halfmove_ = 0;
  copy.fullmove_ = 1;
  return copy.fen();
}

int Position::king_square(bool white) const {
  const int target = white ? King : -King;
  for (int sq = 0; sq < 64; ++sq) {
    if (board_[static_cast<size_t>(sq)] == target) return sq;
  }
  return -1;
}

bool Position::square_attacked(int sq, bool by_white) const {
  const int r = sq / 8, c = sq % 8;
  // Pawns: a white pawn attacks upward (toward row 0).
  const int pawn_row = by_white ? r + 1 : r - 1;
  const int pawn = by_white ? Pawn : -Pawn;
  for (int dc : {-1, 1}) {
    if (on_board(pawn_row, c + dc) && board_[static_cast<size_t>(sq_of(pawn_row, c + dc))] == pawn)
      return true;
  }
  const int sign = by_white ? 1 : -1;
  for (const auto& s : kKnightSteps) {
    const int rr = r + s[0], cc = c + s[1];
    if (on_board(rr, cc) && board_[static_cast<size_t>(sq_of(rr, cc))] == sign * Knight) return true;
  }
  for (const auto& s : kKingSteps) {
    const int rr = r + s[0], cc = c + s[1];
    if (on_board(rr, cc) && board_[static_cast<size_t>(sq_of(rr, cc))] == sign * King) return true;
  }
  auto ray_hits = [&](const int (*dirs)[2], int straight_or_diag) {
    for (int d = 0; d < 4; ++d) {
      int rr = r + dirs[d][0], cc = c + dirs[d][1];
      while (on_board(rr, cc)) {
        const int p = board_[static_cast<size_t>(sq_of(rr, cc))];
        if (p) {
          if (p == sign * Queen || p == sign * straight_or_diag) return true;
          break;
        }
        rr += dirs[d][0];
        cc += dirs[d][1];
      }
    }
    return false;
  };
  return ray_hits(kDiagonal, Bishop) || ray_hits(kOrthogonal, Rook);
}

bool Position::in_check() const {
  const int k = king_square(white_to_move_);
  return k >= 0 && square_attacked(k, !white_to_move_);
}

void Position::generate(std::vector<Move>& out, bool white) const {
  auto push = [&](int from, int to, std::uint8_t flags, int promo = 0) {
    out.push_back(Move{from, to, promo, flags});
  };
  for (int from = 0; from < 64; ++from) {
    const int p = board_[static_cast<size_t>(from)];
    if (!p || !belongs(p, white)) continue;
    const int r = from / 8, c = from % 8;
    const int type = std::abs(p);
    if (type == Pawn) {
      const int dir = white ? -1 : 1;
      const int start_row = white ? 6 : 1;
      const int promo_row = white ? 0 : 7;
      const int r1 = r + dir;
      if (!on_board(r1, c)) continue;
      auto add_pawn = [&](int to, std::uint8_t flags) {
        if (to / 8 == promo_row) {
          for (int promo : kPromotions) push(from, to, flags, promo);
        } else {
          push(from, to, flags);
        }
      };
      if (!board_[static_cast<size_t>(sq_of(r1, c))]) {
        add_pawn(sq_of(r1, c), kQuiet);
        const int r2 = r + 2 * dir;
        if (r == start_row && !board_[static_cast<size_t>(sq_of(r2, c))]) {
          push(from, sq_of(r2, c), kDoublePush);
        }
      }
      for (int dc : {-1, 1}) {
        const int cc = c + dc;
        if (!on_board(r1, cc)) continue;
        const int to = sq_of(r1, cc);
        const int target = board_[static_cast<size_t>(to)];
        if (target && !belongs(target, white)) {
          add_pawn(to, kCapture);
        } else if (to == ep_square_ && !target) {
          push(from, to, static_cast<std::uint8_t>(kCapture | kEnPassant));
        }
      }
      continue;
    }
    auto step_moves = [&](const int (*steps)[2], int count) {
      for (int i = 0; i < count; ++i) {
        const int rr = r + steps[i][0], cc = c + steps[i][1];
        if (!on_board(rr, cc)) continue;
        const int to = sq_of(rr, cc);
        const int target = board_[static_cast<size_t>(to)];
        if (!target) push(from, to, kQuiet);
        else if (!belongs(target, white)) push(from, to, kCapture);
      }
    };
    auto slide_moves = [&](const int (*dirs)[2]) {
      for (int d = 0; d < 4; ++d) {
        int rr = r + dirs[d][0], cc = c + dirs[d][1];
        while (on_board(rr, cc)) {
          const int to = sq_of(rr, cc);
          const int target = board_[static_cast<size_t>(to)];
          if (!target) {
            push(from, to, kQuiet);
          } else {
            if (!belongs(target, white)) push(from, to, kCapture);
            break;
          }
          rr += dirs[d][0];
          cc += dirs[d][1];
        }
      }
    };
    switch (type) {
      case Knight: step_moves(kKnightSteps, 8); break;
      case Bishop: slide_moves(kDiagonal); break;
      case Rook: slide_moves(kOrthogonal); break;
      case Queen:
        slide_moves(kDiagonal);
        slide_moves(kOrthogonal);
        break;
      case King: {
        step_moves(kKingSteps, 8);
        const int home = white ? kWhiteKingStart : kBlackKingStart;
        if (from != home) break;
        const bool enemy = !white;
        const int ks = white ? kWhiteKingside : kBlackKingside;
        const int qs = white ? kWhiteQueenside : kBlackQueenside;
        const int rook = white ? Rook : -Rook;
        if ((castling_ & ks) && !board_[static_cast<size_t>(home + 1)] &&
            !board_[static_cast<size_t>(home + 2)] && board_[static_cast<size_t>(home + 3)] == rook &&
            !square_attacked(home, enemy) && !square_attacked(home + 1, enemy) &&
            !square_attacked(home + 2, enemy)) {
          push(from, home + 2, kCastle);
        }
        if ((castling_ & qs) && !board_[static_cast<size_t>(home - 1)] &&
            !board_[static_cast<size_t>(home - 2)] && !board_[static_cast<size_t>(home - 3)] &&
            board_[static_cast<size_t>(home - 4)] == rook && !square_attacked(home, enemy) &&
            !square_attacked(home - 1, enemy) && !square_attacked(home - 2, enemy)) {
          push(from, home - 2, kCastle);
        }
        break;
      }
      default: break;
    }
  }
}

std::vector<Move> Position::pseudo_legal_moves() const {
  std::vector<Move> moves;
  moves.reserve(64);
  generate(moves, white_to_move_);
  return moves;
}

int Position::pseudo_mobility(bool white) const {
  std::vector<Move> moves;
  moves.reserve(64);
  generate(moves, white);
  return static_cast<int>(moves.size());
}

bool Position::legal_after(const Move& m) const {
  Position next = *this;
  next.make(m);
  const int k = next.king_square(white_to_move_);
  return k >= 0 && !next.square_attacked(k, !white_to_move_);
}

std::vector<Move> Position::legal_moves() const {
  std::vector<Move> pseudo = pseudo_legal_moves();
  std::vector<Move> legal;
  legal.reserve(pseudo.size());
  for (const Move& m : pseudo) {
    if (legal_after(m)) legal.push_back(m);
  }
  return legal;
}

void Position::make(const Move& m) {
  const int piece = board_[static_cast<size_t>(m.from)];
  const bool white = piece > 0;
  const int captured = board_[static_cast<size_t>(m.to)];
  board_[static_cast<size_t>(m.from)] = 0;
  if (m.flags & kEnPassant) {
    const int victim = sq_of(m.from / 8, m.to % 8);
    board_[static_cast<size_t>(victim)] = 0;
  }
  board_[static_cast<size_t>(m.to)] = m.promotion ? (white ? m.promotion : -m.promotion) : piece;
  if (m.flags & kCastle) {
    if (m.to > m.from) {  // kingside: rook from h to f
      board_[static_cast<size_t>(m.from + 1)] = board_[static_cast<size_t>(m.from + 3)];
      board_[static_cast<size_t>(m.from + 3)] = 0;
    } else {
      board_[static_cast<size_t>(m.from - 1)] = board_[static_cast<size_t>(m.from - 4)];
      board_[static_cast<size_t>(m.from - 4)] = 0;
    }
  }
  if (std::abs(piece) == King) {
    castling_ &= white ? ~(kWhiteKingside | kWhiteQueenside) : ~(kBlackKingside | kBlackQueenside);
  }
  for (int sq : {m.from, m.to}) {
    if (sq == kH1) castling_ &= ~kWhiteKingside;
    if (sq == kA1) castling_ &= ~kWhiteQueenside;
    if (sq == kH8) castling_ &= ~kBlackKingside;
    if (sq == kA8) castling_ &= ~kBlackQueenside;
  }
  ep_square_ = (m.flags & kDoublePush) ? (m.from + m.to) / 2 : -1;
  halfmove_ = (std::abs(piece) == Pawn || captured || (m.flags & kEnPassant)) ? 0 : halfmove_ + 1;
  if (!white) ++fullmove_;
  white_to_move_ = !white_to_move_;
}

bool Position::insufficient_material() const {
  int minors = 0;
  int bishops_light = 0, bishops_dark = 0;
  for (int sq = 0; sq < 64; ++sq) {
    const int type = std::abs(board_[static_cast<size_t>(sq)]);
    if (!type || type == King) continue;
    if (type == Pawn || type == Rook || type == Queen) return false;
    ++minors;
    if (type == Bishop) {
      (((sq / 8) + (sq % 8)) % 2 ? bishops_dark : bishops_light)++;
    }
  }
  if (minors <= 1) return true;
  // Only bishops left, all on one square colour.
  return minors == bishops_light + bishops_dark && (bishops_light == 0 || bishops_dark == 0);
}

std::string Position::san(const Move& m) const {
  std::string out;
  const int piece = board_[static_cast<size_t>(m.from)];
  const int type = std::abs(piece);
  if (m.flags & kCastle) {
    out = m.to > m.from ? "O-O" : "O-O-O";
  } else if (type == Pawn) {
    if (m.flags & kCapture) {
      out += static_cast<char>('a' + m.from % 8);
      out += 'x';
    }
    out += square_name(m.to);
    if (m.promotion) {
      out += '=';
      out += piece_letter(m.promotion);
    }
  } else {
    out += piece_letter(type);
    bool ambiguous = false, same_file = false, same_rank = false;
    for (const Move& other : legal_moves()) {
      if (other.to != m.to || other.from == m.from) continue;
      if (board_[static_cast<size_t>(other.from)] != piece) continue;
      ambiguous = true;
      if (other.from % 8 == m.from % 8) same_file = true;
      if (other.from / 8 == m.from / 8) same_rank = true;
    }
    if (ambiguous) {
      if (!same_file) {
        out += static_cast<char>('a' + m.from % 8);
      } else if (!same_rank) {
        out += static_cast<char>('0' + (8 - m.from / 8));
      } else {
        out += square_name(m.from);
      }
    }
    if (m.flags & kCapture) out += 'x';
    out += square_name(m.to);
  }
  const Position next = after(m);
  if (next.in_check()) out += next.legal_moves().empty() ? '#' : '+';
  return out;
}

namespace {

std::string normalize_san(std::string_view text) {
  std::string s(trim(text));
  while (!s.empty() && (s.back() == '+' || s.back() == '#' || s.back() == '!' || s.back() == '?')) {
    s.pop_back();
  }
  if (s.size() > 4 && (s.ends_with("e.p.") || s.ends_with("ep"))) {
    s.erase(s.size() - (s.ends_with("e.p.") ? 4 : 2));
    s = std::string(trim(s));
  }
  std::string castle = s;
  for (auto& ch : castle) {
    if (ch == '0' || ch == 'o') ch = 'O';
  }
  if (castle == "O-O" || castle == "O-O-O") return castle;
  // "e8Q" -> "e8=Q"
  if (s.size() >= 3 && std::string("QRBN").find(s.back()) != std::string::npos &&
      std::isdigit(static_cast<unsigned char>(s[s.size() - 2]))) {
    s.insert(s.size() - 1, "=");
  }
  return s;
}

}  // namespace

std::optional<Move> Position::parse_san(std::string_view text) const {
  const std::string wanted = normalize_san(text);
  if (wanted.empty()) return std::nullopt;
  for (const Move& m : legal_moves()) {
    std::string candidate = san(m);
    while (!candidate.empty() && (candidate.back() == '+' || candidate.back() == '#')) candidate.pop_back();
    if (candidate == wanted) return m;
  }
  return std::nullopt;
}

std::string Position::uci(const Move& m) const {
  std::string out = square_name(m.from) + square_name(m.to);
  if (m.promotion) out += static_cast<char>(std::tolower(piece_letter(m.promotion)));
  return out;
}

std::optional<Move> Position::parse_uci(std::string_view text) const {
  const std::string t = to_lower(trim(text));
  for (const Move& m : legal_moves()) {
    if (uci(m) == t) return m;
  }
  return std::nullopt;
}

std::uint64_t perft(const Position& pos, int depth) {
  if (depth == 0) return 1;
  const auto moves = pos.legal_moves();
  if (depth == 1) return moves.size();
  std::uint64_t total = 0;
  for (const Move& m : moves) total += perft(pos.after(m), depth - 1);
  return total;
}

}  // namespace boardeval::chess
