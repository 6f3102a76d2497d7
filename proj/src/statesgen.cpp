#include "boardeval/statesgen.hpp"

#include <numeric>

#include "boardeval/rng.hpp"

namespace boardeval {

GenProfile default_profile(GameKind kind, GenMode mode) {
  GenProfile p;
  p.kind = kind;
  p.mode = mode;
  switch (kind) {
    case GameKind::TicTacToe:
      p.fill_density = 0.5;
      p.depth_min = 2;
      p.depth_max = 7;
      break;
    case GameKind::Reversi:
      p.fill_density = 0.7;
      p.depth_min = 4;
      p.depth_max = 40;
      break;
    case GameKind::Gomoku:
      p.fill_density = 0.2;
      p.depth_min = 4;
      p.depth_max = 40;
      break;
    case GameKind::Chess:
      p.fill_density = 0.4;
      p.depth_min = 4;
      p.depth_max = 40;
      break;
    case GameKind::Minesweeper:
      p.fill_density = 0.5;
      p.depth_min = 1;
      p.depth_max = 20;
      break;
    case GameKind::Sudoku:
      p.fill_density = 0.4;
      p.depth_min = 0;
      p.depth_max = 0;
      break;
  }
  return p;
}

namespace {

int max_game_length(GameKind kind) {
  switch (kind) {
    case GameKind::TicTacToe: return 9;
    case GameKind::Reversi: return 60;
    case GameKind::Gomoku: return 225;
    case GameKind::Minesweeper: return 54;
    case GameKind::Sudoku: return 81;
    case GameKind::Chess: return 1000;
  }
  return 0;
}

}  // namespace

void validate(const GenProfile& p) {
  if (!(p.fill_density >= 0.0 && p.fill_density <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "fill_density must lie in [0, 1]");
  }
  if (p.depth_min < 0 || p.depth_max < p.depth_min || p.depth_max > max_game_length(p.kind)) {
    throw Error(ErrorCode::InvalidArgument,
                "playout depth range invalid for " + std::string(game_id(p.kind)));
  }
  if (p.sudoku_clues < 17 || p.sudoku_clues > 81) {
    throw Error(ErrorCode::InvalidArgument, "sudoku clue count must lie in [17, 81]");
  }
  if (p.max_attempts < 1) throw Error(ErrorCode::InvalidArgument, "max_attempts must be positive");
}

BoardMatrix random_perception_state(const GenProfile& profile, Seed seed) {
  if (profile.mode != GenMode::PerceptionRandom) {
    throw Error(ErrorCode::InvalidArgument, "profile is not a perception profile");
  }
  validate(profile);
  Rng rng(seed);
  const auto alphabet = cell_alphabet(profile.kind);
  const auto symbols = alphabet.subspan(1);
  std::vector<int> cells(static_cast<size_t>(board_dims(profile.kind).cells()));
  for (int& v : cells) {
    v = rng.bernoulli(profile.fill_density) ? rng.pick(symbols) : alphabet[0];
  }
  return BoardMatrix(profile.kind, std::move(cells));
}

GameState random_legal_state(const GenProfile& profile, Seed seed) {
  if (profile.mode != GenMode::LegalPlayout) {
    throw Error(ErrorCode::InvalidArgument, "profile is not a playout profile");
  }
  validate(profile);
  if (profile.kind == GameKind::Sudoku) {
    return generate_sudoku_puzzle(derive_seed(seed, "sudoku"), profile.sudoku_clues);
  }
  for (int attempt = 0; attempt < profile.max_attempts; ++attempt) {
    Rng rng(derive_seed(seed, "playout", static_cast<std::uint64_t>(attempt)));
    GameState state = initial_state(profile.kind, derive_seed(seed, "origin", static_cast<std::uint64_t>(attempt)));
    const int depth = rng.uniform_int(profile.depth_min, profile.depth_max);
    bool alive = true;
    for (int ply = 0; ply < depth; ++ply) {
      const auto moves = legal_moves(state);
      state = apply_move(state, rng.pick(std::span<const MoveSpec>(moves)));
      if (terminal_status(state).terminal()) {
        alive = false;
        break;
      }
    }
    if (alive) return state;
  }
  throw Error(ErrorCode::GenerationExhausted,
              "no non-terminal playout for " + std::string(game_id(profile.kind)));
}

namespace {

bool fill_solution(std::array<std::int8_t, 81>& grid, int idx, Rng& rng) {
  if (idx == 81) return true;
  std::array<int, 9> digits{};
  std::iota(digits.begin(), digits.end(), 1);
  rng.shuffle(std::span<int>(digits));
  for (int d : digits) {
    if (!sudoku::placement_ok(grid, idx, d)) continue;
    grid[static_cast<size_t>(idx)] = static_cast<std::int8_t>(d);
    if (fill_solution(grid, idx + 1, rng)) return true;
  }
  grid[static_cast<size_t>(idx)] = 0;
  return false;
}

}  // namespace

GameState generate_sudoku_puzzle(Seed seed, int clue_count) {
  if (clue_count < 17 || clue_count > 81) {
    throw Error(ErrorCode::InvalidArgument, "sudoku clue count must lie in [17, 81]");
  }
  Rng rng(seed);
  SudokuData d;
  d.clue_target = clue_count;
  d.solution.fill(0);
  fill_solution(d.solution, 0, rng);
  d.grid = d.solution;

  std::array<int, 81> order{};
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(std::span<int>(order));
  int clues = 81;
  for (int idx : order) {
    if (clues <= clue_count) break;
    const std::int8_t saved = d.grid[static_cast<size_t>(idx)];
    d.grid[static_cast<size_t>(idx)] = 0;
    if (sudoku::count_solutions(d.grid, 2) == 1) {
      --clues;
    } else {
      d.grid[static_cast<size_t>(idx)] = saved;
    }
  }
  for (int i = 0; i < 81; ++i) d.clues[static_cast<size_t>(i)] = d.grid[static_cast<size_t>(i)] != 0;
  return GameState(GameKind::Sudoku, seed, d, Side::First);
}

std::bitset<64> generate_mine_layout(Seed seed) {
  Rng rng(seed);
  std::array<int, 64> cells{};
  std::iota(cells.begin(), cells.end(), 0);
  std::bitset<64> mines;
  for (size_t i = 0; i < 10; ++i) {
    const size_t j = i + static_cast<size_t>(rng.below(64 - i));
    std::swap(cells[i], cells[j]);
    mines.set(static_cast<size_t>(cells[i]));
  }
  return mines;
}

}  // namespace boardeval
