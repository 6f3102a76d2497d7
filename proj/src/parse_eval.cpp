#include "boardeval/parse_eval.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

namespace boardeval {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

/// Last case-insensitive occurrence of `needle` at or before `before`.
size_t rfind_ci(std::string_view text, std::string_view needle, size_t before = std::string_view::npos) {
  if (needle.size() > text.size()) return std::string_view::npos;
  size_t start = std::min(before, text.size() - needle.size());
  for (size_t i = start + 1; i-- > 0;) {
    bool match = true;
    for (size_t j = 0; j < needle.size() && match; ++j) {
      match = std::tolower(static_cast<unsigned char>(text[i + j])) ==
              std::tolower(static_cast<unsigned char>(needle[j]));
    }
    if (match) return i;
  }
  return std::string_view::npos;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

ParsedResponse invalid(std::string_view raw, std::string why) {
  ParsedResponse r;
  r.raw = std::string(raw);
  r.status = ParseStatus::InvalidFormat;
  r.error = std::move(why);
  return r;
}

// ---------------------------------------------------------------------------
// Matrix grammar

/// Balanced [...] block starting at `open` (which must be '['); empty if unbalanced.
std::string_view bracket_block(std::string_view text, size_t open) {
  int depth = 0;
  for (size_t i = open; i < text.size(); ++i) {
    if (text[i] == '[') ++depth;
    if (text[i] == ']' && --depth == 0) return text.substr(open, i - open + 1);
  }
  return {};
}

std::string_view last_bracket_block(std::string_view text) {
  const size_t close = text.rfind(']');
  if (close == std::string_view::npos) return {};
  int depth = 0;
  for (size_t i = close + 1; i-- > 0;) {
    if (text[i] == ']') ++depth;
    if (text[i] == '[' && --depth == 0) return text.substr(i, close - i + 1);
  }
  return {};
}

bool numeric_row_line(std::string_view line) {
  line = trim(line);
  if (line.empty()) return false;
  bool digit = false;
  for (char c : line) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = true;
    } else if (!(c == ',' || c == '-' || c == '[' || c == ']' || c == '|' || c == '&' || c == '\\' ||
                 is_space(c))) {
      return false;
    }
  }
  return digit;
}

/// Fenced block body starting at a "```" at `pos`.
std::string_view fence_body(std::string_view text, size_t pos) {
  size_t body = text.find('\n', pos);
  if (body == std::string_view::npos) return {};
  ++body;
  size_t end = text.find("```", body);
  if (end == std::string_view::npos) end = text.size();
  return text.substr(body, end - body);
}

std::string_view latex_body(std::string_view text, size_t begin) {
  size_t body = text.find('}', begin);
  if (body == std::string_view::npos) return {};
  ++body;
  size_t end = text.find("\\end", body);
  if (end == std::string_view::npos) return {};
  return text.substr(body, end - body);
}

/// First matrix-looking region after a marker.
std::string_view region_after_marker(std::string_view rest) {
  size_t i = 0;
  while (i < rest.size()) {
    const char c = rest[i];
    if (is_space(c) || c == ':' || c == '*' || c == '_' || c == '=' || c == '$' || c == '"') {
      ++i;
      continue;
    }
    if (rest.substr(i, 3) == "```") return fence_body(rest, i);
    if (rest.substr(i, 7) == "\\begin{") return latex_body(rest, i);
    if (rest.substr(i, 2) == "\\[") {
      i += 2;
      continue;
    }
    if (c == '[') {
      std::string_view block = bracket_block(rest, i);
      if (block.empty() || block.find('[', 1) != std::string_view::npos) return block;
      // flat rows written one bracket per line
      size_t end = i + block.size();
      for (;;) {
        size_t j = end;
        while (j < rest.size() && (is_space(rest[j]) || rest[j] == ',')) ++j;
        if (j >= rest.size() || rest[j] != '[') break;
        const std::string_view next = bracket_block(rest, j);
        if (next.empty() || next.find('[', 1) != std::string_view::npos) break;
        end = j + next.size();
      }
      return rest.substr(i, end - i);
    }
    size_t eol = rest.find('\n', i);
    if (eol == std::string_view::npos) eol = rest.size();
    std::string_view line = rest.substr(i, eol - i);
    if (numeric_row_line(line)) {
      size_t end = eol;
      while (end < rest.size()) {
        size_t next = rest.find('\n', end + 1);
        if (next == std::string_view::npos) next = rest.size();
        if (!numeric_row_line(rest.substr(end + 1, next - end - 1))) break;
        end = next;
      }
      return rest.substr(i, end - i);
    }
    i = eol;  // prose line between marker and matrix
  }
  return {};
}

bool parse_int_token(std::string_view tok, int& out) {
  if (tok.empty()) return false;
  size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
  if (i == tok.size() || tok.size() - i > 3) return false;
  for (size_t j = i; j < tok.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(tok[j]))) return false;
  }
  out = std::stoi(std::string(tok));
  return true;
}

bool parse_row(std::string_view text, std::vector<int>& row, char extra_sep = 0) {
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (is_space(text[i]) || text[i] == ',' || text[i] == '|' || text[i] == extra_sep)) ++i;
    if (i >= text.size()) break;
    size_t start = i;
    while (i < text.size() && !(is_space(text[i]) || text[i] == ',' || text[i] == '|' || text[i] == extra_sep)) ++i;
    int v = 0;
    if (!parse_int_token(text.substr(start, i - start), v)) return false;
    row.push_back(v);
  }
  return true;
}

std::optional<std::vector<std::vector<int>>> parse_region(std::string_view region, std::string& why) {
  std::vector<std::vector<int>> rows;
  if (const size_t b = region.find("\\begin{"); b != std::string_view::npos) region = latex_body(region, b);
  if (region.find('&') != std::string_view::npos || region.find("\\\\") != std::string_view::npos) {
    size_t start = 0;
    while (start < region.size()) {
      size_t end = region.find("\\\\", start);
      if (end == std::string_view::npos) end = region.size();
      std::vector<int> row;
      if (!parse_row(region.substr(start, end - start), row, '&')) {
        why = "non-integer cell";
        return std::nullopt;
      }
      if (!row.empty()) rows.push_back(std::move(row));
      start = end + 2;
    }
    return rows;
  }
  if (region.find('[') != std::string_view::npos) {
    std::vector<size_t> stack;
    std::vector<bool> nested;
    for (size_t i = 0; i < region.size(); ++i) {
      const char c = region[i];
      if (c == '[') {
        if (!nested.empty()) nested.back() = true;
        stack.push_back(i);
        nested.push_back(false);
      } else if (c == ']') {
        if (stack.empty()) {
          why = "unbalanced brackets";
          return std::nullopt;
        }
        const size_t open = stack.back();
        const bool had_child = nested.back();
        stack.pop_back();
        nested.pop_back();
        if (!had_child) {
          std::vector<int> row;
          if (!parse_row(region.substr(open + 1, i - open - 1), row)) {
            why = "non-integer cell";
            return std::nullopt;
          }
          rows.push_back(std::move(row));
        }
      } else if (stack.size() <= 1 && !(is_space(c) || c == ',')) {
        // text between rows is not part of the grammar
        if (stack.empty() || !nested.back()) continue;
        why = "stray text between rows";
        return std::nullopt;
      }
    }
    if (!stack.empty()) {
      why = "unbalanced brackets";
      return std::nullopt;
    }
    return rows;
  }
  for (auto line : split_lines(region)) {
    if (trim(line).empty()) continue;
    std::vector<int> row;
    if (!parse_row(line, row)) {
      why = "non-integer cell";
      return std::nullopt;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Moves

std::string_view marker_line(std::string_view text, size_t marker, size_t marker_len) {
  std::string_view rest = text.substr(marker + marker_len);
  size_t i = 0;
  while (i < rest.size() && (rest[i] == ':' || rest[i] == '*' || rest[i] == '_' || rest[i] == ' ' || rest[i] == '\t' ||
                             rest[i] == '=' || rest[i] == '-' || rest[i] == '>')) {
    ++i;
  }
  rest = rest.substr(i);
  for (auto line : split_lines(rest)) {
    if (!trim(line).empty()) return trim(line);
  }
  return {};
}

std::string clean_move_text(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '*' || c == '`' || c == '"' || c == '<' || c == '>' || c == '\'') continue;
    out += c;
  }
  std::string_view t = trim(out);
  while (!t.empty() && (t.front() == '(' || t.front() == '[')) t.remove_prefix(1);
  return std::string(trim(t));
}

const std::regex& cell_letter_first() {
  static const std::regex re(R"(^([A-Za-z])\s*(\d{1,2})(?![0-9]))");
  return re;
}
const std::regex& cell_digit_first() {
  static const std::regex re(R"(^(\d{1,2})\s*([A-Za-z])(?![A-Za-z]))");
  return re;
}
const std::regex& sudoku_move_re() {
  static const std::regex re(R"(^([A-Ia-i])\s*([1-9])[\s:=,]+([1-9])(?![0-9]))");
  return re;
}
const std::regex& san_re() {
  static const std::regex re(
      R"(^(O-O-O|O-O|0-0-0|0-0|[KQRBN][a-h]?[1-8]?x?[a-h][1-8]|[a-h](x[a-h])?[1-8](=?[QRBNqrbn])?)[+#]?[!?]*$)");
  return re;
}

std::string capture_span(std::string_view text, size_t from, size_t marker_len, size_t to) {
  std::string_view s = text.substr(from + marker_len, to - from - marker_len);
  size_t i = 0;
  while (i < s.size() && (s[i] == ':' || s[i] == '*' || s[i] == '_' || is_space(s[i]))) ++i;
  s = s.substr(i);
  while (!s.empty() && (s.back() == '*' || s.back() == '_' || is_space(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

ParsedResponse parse_matrix(std::string_view text, GameKind kind) {
  std::string_view region;
  const size_t marker = rfind_ci(text, "game state");
  if (marker != std::string_view::npos) {
    region = region_after_marker(text.substr(marker + 10));
  } else {
    region = last_bracket_block(text);
    if (region.empty()) {
      if (const size_t fence = text.rfind("```"); fence != std::string_view::npos) {
        const size_t open = text.rfind("```", fence == 0 ? 0 : fence - 1);
        if (open != std::string_view::npos && open != fence) region = fence_body(text, open);
      }
    }
  }
  if (trim(region).empty()) return invalid(text, "no matrix found");
  std::string why;
  auto rows = parse_region(region, why);
  if (!rows) return invalid(text, why);
  const Dims d = board_dims(kind);
  if (static_cast<int>(rows->size()) != d.rows) {
    return invalid(text, "expected " + std::to_string(d.rows) + " rows, got " + std::to_string(rows->size()));
  }
  IntGrid g{d.rows, d.cols, {}};
  for (const auto& row : *rows) {
    if (static_cast<int>(row.size()) != d.cols) {
      return invalid(text, "expected " + std::to_string(d.cols) + " columns, got " + std::to_string(row.size()));
    }
    g.cells.insert(g.cells.end(), row.begin(), row.end());
  }
  ParsedResponse r;
  r.raw = std::string(text);
  r.status = ParseStatus::Ok;
  r.payload = std::move(g);
  return r;
}

ParsedResponse parse_answer(std::string_view text) {
  static const std::regex after_marker(
      R"(^[\s:*_=>\-"'`]*(?:(?:is|would be|will be|should be)\s*)?[\s:*_"'`(\[]*([A-Da-d])(?![A-Za-z0-9]))",
      std::regex::icase);
  auto ok = [&](char letter) {
    ParsedResponse r;
    r.raw = std::string(text);
    r.status = ParseStatus::Ok;
    r.payload = static_cast<char>(std::toupper(static_cast<unsigned char>(letter)));
    return r;
  };
  const size_t marker = rfind_ci(text, "answer");
  if (marker != std::string_view::npos) {
    const std::string rest(text.substr(marker + 6));
    std::smatch m;
    if (std::regex_search(rest, m, after_marker, std::regex_constants::match_continuous)) return ok(m.str(1)[0]);
  }
  const auto lines = split_lines(text);
  for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
    std::string_view t = trim(*it);
    auto strip = [](char c) { return c == '(' || c == ')' || c == '[' || c == ']' || c == '*' || c == '.' ||
                                     c == ':' || c == '`' || c == '"' || c == '\''; };
    while (!t.empty() && strip(t.front())) t.remove_prefix(1);
    while (!t.empty() && strip(t.back())) t.remove_suffix(1);
    if (t.size() == 1) {
      const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(t[0])));
      if (c >= 'A' && c <= 'D') return ok(c);
    }
  }
  return invalid(text, "no answer letter");
}

ParsedResponse parse_move(std::string_view text, GameKind kind, bool e2e) {
  const size_t marker = rfind_ci(text, "movement");
  if (marker == std::string_view::npos) return invalid(text, "no Movement marker");
  std::optional<E2ETriple> triple;
  const std::string line = clean_move_text(marker_line(text, marker, 8));
  if (e2e) {
    E2ETriple t;
    t.movement = line;
    const size_t strat = rfind_ci(text, "strategy", marker);
    const size_t strat_end = marker;
    if (strat != std::string_view::npos && strat < marker) {
      t.strategy = capture_span(text, strat, 8, strat_end);
      const size_t obs = rfind_ci(text, "observation", strat);
      if (obs != std::string_view::npos && obs < strat) t.observation = capture_span(text, obs, 11, strat);
    } else if (const size_t obs = rfind_ci(text, "observation", marker); obs != std::string_view::npos && obs < marker) {
      t.observation = capture_span(text, obs, 11, marker);
    }
    triple = std::move(t);
  }
  auto fail = [&](std::string why) {
    auto r = invalid(text, std::move(why));
    r.triple = triple;
    return r;
  };
  if (line.empty()) return fail("empty movement");

  std::optional<MoveSpec> move;
  std::smatch m;
  switch (kind) {
    case GameKind::TicTacToe:
    case GameKind::Reversi:
    case GameKind::Gomoku:
    case GameKind::Minesweeper: {
      if (!std::regex_search(line, m, cell_letter_first(), std::regex_constants::match_continuous) &&
          !std::regex_search(line, m, cell_digit_first(), std::regex_constants::match_continuous)) {
        return fail("no board label in '" + line + "'");
      }
      try {
        move = MoveSpec::cell(kind, label_to_coord(kind, m.str(0)));
      } catch (const Error& e) {
        return fail(e.what());
      }
      break;
    }
    case GameKind::Sudoku: {
      if (!std::regex_search(line, m, sudoku_move_re(), std::regex_constants::match_continuous)) {
        return fail("expected '<row><column> <digit>' in '" + line + "'");
      }
      const CellCoord c = label_to_coord(kind, m.str(1) + m.str(2));
      move = MoveSpec::digit(c, std::stoi(m.str(3)));
      break;
    }
    case GameKind::Chess: {
      std::string token;
      size_t i = 0;
      while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) ++i;
        size_t start = i;
        while (i < line.size() && !is_space(line[i])) ++i;
        std::string tok = line.substr(start, i - start);
        if (tok.empty()) break;
        static const std::regex move_number(R"(^\d+\.+$)");
        if (std::regex_match(tok, move_number)) continue;
        token = tok;
        break;
      }
      while (!token.empty() && (token.back() == '.' || token.back() == ',' || token.back() == ';' ||
                                token.back() == ')' || token.back() == ']')) {
        token.pop_back();
      }
      if (!std::regex_match(token, san_re())) return fail("not SAN: '" + token + "'");
      move = MoveSpec::chess(token);
      break;
    }
  }
  ParsedResponse r;
  r.raw = std::string(text);
  r.status = ParseStatus::Ok;
  r.payload = *move;
  r.triple = triple;
  return r;
}

// ---------------------------------------------------------------------------
// Scores

double score_perceiving(const ParsedResponse& parsed, const BoardMatrix& gt) {
  if (!parsed.ok() || !std::holds_alternative<IntGrid>(parsed.payload)) return 0.0;
  const IntGrid& p = parsed.matrix();
  if (p.rows != gt.rows() || p.cols != gt.cols()) return 0.0;
  int hits = 0;
  const auto cells = gt.cells();
  for (size_t i = 0; i < cells.size(); ++i) hits += p.cells[i] == cells[i];
  return static_cast<double>(hits) / static_cast<double>(cells.size());
}

int score_qa(const ParsedResponse& parsed, const QAItem& item) {
  if (!parsed.ok() || !std::holds_alternative<char>(parsed.payload)) return 0;
  return parsed.letter() == item.correct ? 1 : 0;
}

bool validate_rule_move(const ParsedResponse& parsed, const GameState& state) {
  if (!parsed.ok() || !std::holds_alternative<MoveSpec>(parsed.payload)) return false;
  if (parsed.move().kind != state.kind()) return false;
  return is_legal(state, parsed.move());
}

namespace {

enum class Result { Win, Tie, Loss };

Result model_result(const E2ESessionLog& log) {
  if (log.struck_out) return Result::Loss;
  switch (log.outcome.status) {
    case Outcome::Status::Win: return log.outcome.side == Side::First ? Result::Win : Result::Loss;
    case Outcome::Status::Loss: return log.outcome.side == Side::First ? Result::Loss : Result::Win;
    case Outcome::Status::Tie: return Result::Tie;
    case Outcome::Status::Ongoing: break;
  }
  throw Error(ErrorCode::InvalidArgument, "session still ongoing");
}

double bonus(Result r, double win, double tie) {
  return r == Result::Win ? win : r == Result::Tie ? tie : 0.0;
}

}  // namespace

double score_e2e(const E2ESessionLog& log) {
  if (!log.final_state) throw Error(ErrorCode::InvalidArgument, "session has no final state");
  const Result r = model_result(log);
  const GameState& s = *log.final_state;
  const double moves = log.model_moves;
  switch (log.kind) {
    case GameKind::TicTacToe: return 10 * moves + bonus(r, 50, 20);
    case GameKind::Sudoku: {
      const auto& d = s.as<SudokuData>();
      int filled = 0, correct = 0;
      for (size_t i = 0; i < 81; ++i) {
        if (d.clues[i] || d.grid[i] == 0) continue;
        ++filled;
        correct += d.grid[i] == d.solution[i];
      }
      return 2.0 * filled + 10.0 * correct + bonus(r, 1000, 0);
    }
    case GameKind::Reversi:
      return 10 * moves + 20.0 * reversi::count(s.as<ReversiData>().cells, 1) + bonus(r, 1000, 500);
    case GameKind::Minesweeper: {
      const auto& d = s.as<MinesweeperData>();
      const double safe = static_cast<double>((d.revealed & ~d.mines).count());
      return 10 * moves + 2 * safe + bonus(r, 1000, 0);
    }
    case GameKind::Gomoku: return 10 * moves + bonus(r, 1000, 500);
    case GameKind::Chess: return 10 * moves + 5.0 * s.as<ChessData>().captured_black_value + bonus(r, 1000, 500);
  }
  return 0;
}

double e2e_max_score(GameKind kind, int sudoku_clues) {
  switch (kind) {
    case GameKind::TicTacToe: return 5 * 10 + 50;            // O moves at most 5 times
    case GameKind::Sudoku: return 12.0 * (81 - sudoku_clues) + 1000;
    case GameKind::Reversi: return 60 * 10 + 64 * 20 + 1000;  // every empty square, full board
    case GameKind::Minesweeper: return 54 * 10 + 54 * 2 + 1000;
    case GameKind::Gomoku: return 113 * 10 + 1000;            // black places at most 113 stones
    case GameKind::Chess: return 40 * 10 + 39 * 5 + 1000;     // 40-move reference game, all black material
  }
  return 1;
}

double normalize_e2e(GameKind kind, double score, int sudoku_clues) {
  return std::clamp(score / e2e_max_score(kind, sudoku_clues), 0.0, 1.0);
}

std::vector<Ability> task_abilities(TaskKind task) {
  switch (task) {
    case TaskKind::Perceiving: return {Ability::Perception};
    case TaskKind::QA: return {Ability::Perception, Ability::Reasoning};
    case TaskKind::RuleFollowing: return {Ability::Perception, Ability::Reasoning, Ability::Decision};
    case TaskKind::E2E: return {kAllAbilities.begin(), kAllAbilities.end()};
  }
  return {};
}

double task_weight(const AbilityScoreTable& stars, GameKind g, TaskKind task) {
  double sum = 0;
  int n = 0;
  for (Ability a : task_abilities(task)) {
    if (auto s = stars.star(g, a)) {
      sum += *s;
      ++n;
    }
  }
  return n ? sum / n : 0.0;
}

double aggregate_overall(TaskKind task, const std::map<GameKind, double>& per_game, const AbilityScoreTable& stars,
                         const std::vector<GameKind>& required) {
  for (GameKind g : required) {
    if (!per_game.count(g)) {
      throw Error(ErrorCode::InvalidArgument, "missing score for " + std::string(game_id(g)));
    }
  }
  double num = 0, den = 0;
  for (const auto& [g, score] : per_game) {
    const double w = task_weight(stars, g, task);
    num += w * score;
    den += w;
  }
  if (den <= 0) throw Error(ErrorCode::InvalidArgument, "all game weights are zero");
  return num / den;
}

}  // namespace boardeval
