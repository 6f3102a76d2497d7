#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "boardeval/core.hpp"

namespace boardeval {

enum class Ability { Perception = 0, Reasoning = 1, Decision = 2, Adversary = 3 };

inline constexpr std::array<Ability, 4> kAllAbilities{Ability::Perception, Ability::Reasoning,
                                                      Ability::Decision, Ability::Adversary};

std::string_view ability_name(Ability a);

struct GameComplexityParams {
  double log10_S = 0;  // state-space size as log10; 3^225 does not fit anything native
  double P = 1;
  double N = 1;
  double B = 1;
  double L = 1;
  int U = 0;
  double C = 1;
  bool is_multiplayer = false;
};

struct AbilityCoefficients {
  std::array<double, 3> perception{0.8, 1.5, 1.2};
  std::array<double, 3> reasoning{1.0, 1.0, 1.0};
  std::array<double, 3> decision{1.0, 1.0, 1.0};
};

/// One value per ability; nullopt = N/A.
using AbilityRow = std::array<std::optional<double>, 4>;
using AbilityColumns = std::map<GameKind, AbilityRow>;

/// Throws Error{InvalidArgument} on a non-positive parameter.
AbilityRow compute_phi(const GameComplexityParams& params, const AbilityCoefficients& coeffs);

/// Min-max map onto [0.5, 5] per ability over all present games; N/A kept.
/// Throws Error{InvalidArgument} when a column is degenerate.
AbilityColumns normalize_scores(const AbilityColumns& raw);

/// round(2x)/2 with exact quarter points rounded up. Throws outside [0.5, 5].
double star_map(double normalized);

/// Games ordered by the sum of their normalized values (N/A counts 0),
/// easiest first. Ties keep the GameKind order.
std::vector<GameKind> difficulty_chain(const AbilityColumns& normalized);

struct AbilityScoreTable {
  AbilityColumns raw;
  AbilityColumns normalized;
  AbilityColumns stars;

  /// Star rating, or nullopt for N/A or a game absent from the table.
  std::optional<double> star(GameKind g, Ability a) const;
};

AbilityScoreTable build_table(const AbilityColumns& raw);

/// Reference data shipped in assets/ratings/constants.txt.
struct RatingConstants {
  AbilityCoefficients coefficients;
  std::map<GameKind, GameComplexityParams> params;
  AbilityColumns printed_raw;
  std::array<std::pair<double, double>, 4> printed_extremes{};
  AbilityColumns printed_normalized;
  AbilityColumns printed_stars;
  std::vector<GameKind> printed_chain;
};

const RatingConstants& rating_constants();
RatingConstants parse_rating_constants(std::string_view text);

/// Raw table computed from the parameters and coefficients.
AbilityColumns formula_raw(const RatingConstants& c);

/// Printed raw values, except that the perception entry of the game that the
/// printed extremes name as minimum takes the printed minimum. The printed
/// Tic Tac Toe perception value disagrees with the printed minimum; only the
/// latter reproduces the printed normalized column.
AbilityColumns printed_path_raw(const RatingConstants& c);

/// Star weights from the reference star table.
AbilityScoreTable printed_star_table();

struct Divergence {
  GameKind game;
  Ability ability;
  double computed;
  double printed;
};

/// Entries whose computed value, rounded to `decimals` places as printed,
/// differs from the printed one by more than `tol`.
std::vector<Divergence> divergences(const AbilityColumns& computed, const AbilityColumns& printed,
                                    double tol = 0.01, int decimals = 2);

/// Human-readable dump of both data paths with divergences flagged.
std::string ratings_report();

}  // namespace boardeval
