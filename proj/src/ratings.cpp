#include "boardeval/ratings.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "boardeval/assets.hpp"

namespace boardeval {

std::string_view ability_name(Ability a) {
  switch (a) {
    case Ability::Perception: return "perception";
    case Ability::Reasoning: return "reasoning";
    case Ability::Decision: return "decision";
    case Ability::Adversary: return "adversary";
  }
  return "?";
}

namespace {

Ability parse_ability(const std::string& s) {
  for (Ability a : kAllAbilities) {
    if (ability_name(a) == s) return a;
  }
  throw Error(ErrorCode::Unparseable, "unknown ability " + s);
}

size_t idx(Ability a) { return static_cast<size_t>(a); }

}  // namespace

AbilityRow compute_phi(const GameComplexityParams& p, const AbilityCoefficients& k) {
  for (double v : {p.log10_S, p.P, p.N, p.B, p.L, p.C}) {
    if (!(v > 0)) throw Error(ErrorCode::InvalidArgument, "complexity parameters must be positive");
  }
  if (p.U != 0 && p.U != 1) throw Error(ErrorCode::InvalidArgument, "U must be 0 or 1");
  const double lN = std::log10(p.N);
  AbilityRow row;
  row[idx(Ability::Perception)] =
      k.perception[0] * p.log10_S + k.perception[1] * std::log10(p.P) + k.perception[2] * lN * lN;
  row[idx(Ability::Reasoning)] = k.reasoning[0] * p.log10_S + k.reasoning[1] * std::log10(p.B) + k.reasoning[2] * p.U;
  row[idx(Ability::Decision)] =
      k.decision[0] * std::log10(p.B) + k.decision[1] * std::log10(p.L) + k.decision[2] * std::log10(p.C);
  if (p.is_multiplayer) row[idx(Ability::Adversary)] = p.L * std::log10(p.B);
  return row;
}

AbilityColumns normalize_scores(const AbilityColumns& raw) {
  AbilityColumns out;
  for (const auto& [g, row] : raw) out[g] = AbilityRow{};
  for (Ability a : kAllAbilities) {
    std::optional<double> lo, hi;
    for (const auto& [g, row] : raw) {
      if (const auto& v = row[idx(a)]) {
        lo = lo ? std::min(*lo, *v) : *v;
        hi = hi ? std::max(*hi, *v) : *v;
      }
    }
    if (!lo) continue;
    if (*hi - *lo <= 0) {
      throw Error(ErrorCode::InvalidArgument,
                  "degenerate " + std::string(ability_name(a)) + " column: min equals max");
    }
    for (const auto& [g, row] : raw) {
      if (const auto& v = row[idx(a)]) out[g][idx(a)] = 0.5 + 4.5 * (*v - *lo) / (*hi - *lo);
    }
  }
  return out;
}

double star_map(double normalized) {
  constexpr double eps = 1e-9;
  if (normalized < 0.5 - eps || normalized > 5.0 + eps) {
    throw Error(ErrorCode::InvalidArgument, "normalized score outside [0.5, 5]");
  }
  return std::floor(2.0 * normalized + 0.5 + eps) / 2.0;
}

std::vector<GameKind> difficulty_chain(const AbilityColumns& normalized) {
  std::vector<std::pair<double, GameKind>> sums;
  for (const auto& [g, row] : normalized) {
    double s = 0;
    for (const auto& v : row) s += v.value_or(0.0);
    sums.emplace_back(s, g);
  }
  std::stable_sort(sums.begin(), sums.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<GameKind> chain;
  for (const auto& [s, g] : sums) chain.push_back(g);
  return chain;
}

std::optional<double> AbilityScoreTable::star(GameKind g, Ability a) const {
  auto it = stars.find(g);
  if (it == stars.end()) return std::nullopt;
  return it->second[idx(a)];
}

AbilityScoreTable build_table(const AbilityColumns& raw) {
  AbilityScoreTable t;
  t.raw = raw;
  t.normalized = normalize_scores(raw);
  for (const auto& [g, row] : t.normalized) {
    AbilityRow s;
    for (size_t i = 0; i < row.size(); ++i) {
      if (row[i]) s[i] = star_map(*row[i]);
    }
    t.stars[g] = s;
  }
  return t;
}

// ---------------------------------------------------------------------------

RatingConstants parse_rating_constants(std::string_view text) {
  RatingConstants c;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto bad = [&](const std::string& why) {
    return Error(ErrorCode::Unparseable, "constants line " + std::to_string(lineno) + ": " + why);
  };
  auto read_row = [&](std::istringstream& ls) {
    AbilityRow row;
    for (auto& v : row) {
      std::string tok;
      if (!(ls >> tok)) throw bad("expected four values");
      if (tok != "NA") v = std::stod(tok);
    }
    return row;
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::istringstream ls{std::string(t)};
    std::string key;
    ls >> key;
    if (key == "coefficients") {
      std::string ability;
      std::array<double, 3> v{};
      if (!(ls >> ability >> v[0] >> v[1] >> v[2])) throw bad("malformed coefficients");
      switch (parse_ability(ability)) {
        case Ability::Perception: c.coefficients.perception = v; break;
        case Ability::Reasoning: c.coefficients.reasoning = v; break;
        case Ability::Decision: c.coefficients.decision = v; break;
        default: throw bad("no coefficients for adversary");
      }
    } else if (key == "params") {
      std::string game;
      double base = 0, exponent = 0;
      int multi = 0;
      GameComplexityParams p;
      if (!(ls >> game >> base >> exponent >> p.P >> p.N >> p.B >> p.L >> p.U >> p.C >> multi)) {
        throw bad("malformed params");
      }
      p.log10_S = exponent * std::log10(base);
      p.is_multiplayer = multi != 0;
      c.params[parse_game_id(game)] = p;
    } else if (key == "raw" || key == "normalized" || key == "stars") {
      std::string game;
      ls >> game;
      AbilityColumns& dest = key == "raw" ? c.printed_raw : key == "normalized" ? c.printed_normalized : c.printed_stars;
      dest[parse_game_id(game)] = read_row(ls);
    } else if (key == "extremes") {
      std::string ability;
      double lo = 0, hi = 0;
      if (!(ls >> ability >> lo >> hi)) throw bad("malformed extremes");
      c.printed_extremes[idx(parse_ability(ability))] = {lo, hi};
    } else if (key == "chain") {
      std::string game;
      while (ls >> game) c.printed_chain.push_back(parse_game_id(game));
    } else {
      throw bad("unknown key " + key);
    }
  }
  return c;
}

const RatingConstants& rating_constants() {
  static const RatingConstants c = [] {
    auto text = embedded_asset("ratings/constants.txt");
    if (!text) throw Error(ErrorCode::Io, "ratings constants asset missing");
    return parse_rating_constants(*text);
  }();
  return c;
}

AbilityColumns formula_raw(const RatingConstants& c) {
  AbilityColumns out;
  for (const auto& [g, p] : c.params) out[g] = compute_phi(p, c.coefficients);
  return out;
}

AbilityColumns printed_path_raw(const RatingConstants& c) {
  AbilityColumns out = c.printed_raw;
  // The printed minimum names Tic Tac Toe, the smallest printed entry.
  const size_t p = idx(Ability::Perception);
  auto smallest = std::min_element(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    return a.second[p].value_or(1e300) < b.second[p].value_or(1e300);
  });
  if (smallest != out.end()) smallest->second[p] = c.printed_extremes[p].first;
  return out;
}

AbilityScoreTable printed_star_table() {
  const auto& c = rating_constants();
  AbilityScoreTable t;
  t.raw = c.printed_raw;
  t.normalized = c.printed_normalized;
  t.stars = c.printed_stars;
  return t;
}

std::vector<Divergence> divergences(const AbilityColumns& computed, const AbilityColumns& printed, double tol,
                                    int decimals) {
  const double scale = std::pow(10.0, decimals);
  std::vector<Divergence> out;
  for (const auto& [g, row] : printed) {
    auto it = computed.find(g);
    if (it == computed.end()) continue;
    for (Ability a : kAllAbilities) {
      const auto& pv = row[idx(a)];
      const auto& cv = it->second[idx(a)];
      if (!pv || !cv) continue;
      const double rounded = std::round(*cv * scale) / scale;
      if (std::abs(rounded - *pv) > tol + 1e-9) out.push_back({g, a, *cv, *pv});
    }
  }
  return out;
}

namespace {

std::string fmt(const std::optional<double>& v, int prec) {
  if (!v) return "N/A";
  std::ostringstream os;
  os << std::fixed << std::setprecision(prec) << *v;
  return os.str();
}

void dump(std::ostringstream& os, const std::string& title, const AbilityColumns& cols, int prec) {
  os << title << "\n";
  os << std::left << std::setw(14) << "game";
  for (Ability a : kAllAbilities) os << std::setw(12) << ability_name(a);
  os << "\n";
  for (GameKind g : kAllGames) {
    auto it = cols.find(g);
    if (it == cols.end()) continue;
    os << std::setw(14) << game_id(g);
    for (const auto& v : it->second) os << std::setw(12) << fmt(v, prec);
    os << "\n";
  }
  os << "\n";
}

std::string chain_text(const std::vector<GameKind>& chain) {
  std::string s;
  for (size_t i = 0; i < chain.size(); ++i) {
    if (i) s += " < ";
    s += game_id(chain[i]);
  }
  return s;
}

void dump_divergences(std::ostringstream& os, const std::vector<Divergence>& d, int decimals = 2) {
  if (d.empty()) {
    os << "  none\n";
    return;
  }
  for (const auto& x : d) {
    os << "  " << game_id(x.game) << " " << ability_name(x.ability) << ": computed " << fmt(x.computed, 4)
       << " printed " << fmt(x.printed, decimals) << "\n";
  }
}

}  // namespace

std::string ratings_report() {
  const auto& c = rating_constants();
  std::ostringstream os;

  const auto formula = build_table(formula_raw(c));
  os << "== formula path ==\n\n";
  dump(os, "raw", formula.raw, 4);
  dump(os, "normalized", formula.normalized, 2);
  dump(os, "stars", formula.stars, 1);
  os << "raw divergences from printed raw values:\n";
  dump_divergences(os, divergences(formula.raw, c.printed_raw, 1e-3, 4), 4);
  os << "difficulty chain: " << chain_text(difficulty_chain(formula.normalized)) << "\n\n";

  const auto printed = build_table(printed_path_raw(c));
  os << "== printed-constants path ==\n\n";
  dump(os, "raw", printed.raw, 4);
  dump(os, "normalized", printed.normalized, 2);
  dump(os, "stars", printed.stars, 1);
  os << "normalized divergences from the printed table:\n";
  dump_divergences(os, divergences(printed.normalized, c.printed_normalized));
  os << "star divergences from the printed ratings:\n";
  dump_divergences(os, divergences(printed.stars, c.printed_stars, 0.0));
  os << "difficulty chain (computed normalized): " << chain_text(difficulty_chain(printed.normalized)) << "\n";
  os << "difficulty chain (printed normalized):  " << chain_text(difficulty_chain(c.printed_normalized)) << "\n";
  os << "difficulty chain (printed):             " << chain_text(c.printed_chain) << "\n";
  return os.str();
}

}  // namespace boardeval
