#pragma once

#include <bitset>
#include <utility>

#include "boardeval/core.hpp"
#include "boardeval/engines.hpp"

namespace boardeval {

inline constexpr int kDefaultSudokuClues = 30;

enum class GenMode { PerceptionRandom, LegalPlayout };

struct GenProfile {
  GameKind kind = GameKind::TicTacToe;
  GenMode mode = GenMode::PerceptionRandom;
  double fill_density = 0.5;
  int depth_min = 0;
  int depth_max = 0;
  int sudoku_clues = kDefaultSudokuClues;
  int max_attempts = 200;
};

/// Defaults per game: densities TTT .5, Reversi .7, Gomoku .2, Chess .4,
/// Minesweeper .5, Sudoku .4; playout depths TTT 2-7, Reversi/Gomoku/Chess
/// 4-40, Minesweeper 1-20 reveals, Sudoku none.
GenProfile default_profile(GameKind kind, GenMode mode);

/// Throws Error{InvalidArgument} on an out-of-range density or depth range.
void validate(const GenProfile& p);

/// Independent cells: empty with probability 1 - density, otherwise uniform
/// over the kind's non-empty symbols. Game rules are not enforced.
BoardMatrix random_perception_state(const GenProfile& profile, Seed seed);

/// Uniform random legal moves from the start for a depth drawn from the
/// profile range, redrawn on early termination. Sudoku returns the puzzle
/// unchanged. Throws Error{GenerationExhausted}.
GameState random_legal_state(const GenProfile& profile, Seed seed);

/// Randomised backtracking fill, then clue removal in random order while the
/// solution stays unique. Stops at clue_count or when no removable cell is
/// left.
GameState generate_sudoku_puzzle(Seed seed, int clue_count);

std::bitset<64> generate_mine_layout(Seed seed);

}  // namespace boardeval
