#include "dilemma/game.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "dilemma/errors.hpp"

namespace dilemma {

std::string_view to_string(GameClass c) {
  switch (c) {
    case GameClass::PrisonersDilemma: return "PrisonersDilemma";
    case GameClass::Chicken: return "Chicken";
    case GameClass::Snowdrift: return "Snowdrift";
    case GameClass::DueCare: return "DueCare";
    case GameClass::Custom: return "Custom";
  }
  return "Custom";
}

GameClass game_class_from_string(std::string_view s) {
  // Case, '_' and '-' are ignored; "pd" is accepted as a short form.
  auto fold = [](std::string_view v) {
    std::string out;
    for (char ch : v)
      if (ch != '_' && ch != '-') out += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return out;
  };
  const std::string key = fold(s);
  if (key == "pd") return GameClass::PrisonersDilemma;
  for (auto c : {GameClass::PrisonersDilemma, GameClass::Chicken, GameClass::Snowdrift,
                 GameClass::DueCare, GameClass::Custom}) {
    if (fold(to_string(c)) == key) return c;
  }
  throw std::invalid_argument("unknown game class: " + std::string(s));
}

namespace {

void require(bool ok, const Game2x2& g, const char* inequality) {
  if (!ok) {
    std::ostringstream ss;
    ss << "game '" << g.name << "' tagged " << to_string(g.tag) << " violates " << inequality
       << " (T=" << g.T() << ", R=" << g.R() << ", P=" << g.P() << ", S=" << g.S() << ")";
    throw OrderingViolation(ss.str());
  }
}

}  // namespace

void validate_ordering(const Game2x2& g) {
  if (!g.row.allFinite() || !g.col.allFinite()) {
    throw OrderingViolation("game '" + g.name + "' has non-finite payoffs");
  }
  switch (g.tag) {
    case GameClass::PrisonersDilemma:
      require(g.symmetric(), g, "symmetry");
      require(g.T() > g.R(), g, "T > R");
      require(g.R() > g.P(), g, "R > P");
      require(g.P() > g.S(), g, "P > S");
      require(2 * g.R() > g.T() + g.S(), g, "2R > T + S");
      break;
    case GameClass::Chicken:
    case GameClass::Snowdrift:
      require(g.symmetric(), g, "symmetry");
      require(g.T() > g.R(), g, "T > R");
      require(g.R() > g.S(), g, "R > S");
      require(g.S() > g.P(), g, "S > P");
      break;
    case GameClass::DueCare:
    case GameClass::Custom:
      break;
  }
}

Game2x2 make_game(std::string name, double T, double R, double P, double S, GameClass tag) {
  Eigen::Matrix2d row;
  row << R, S, T, P;
  return make_game(std::move(name), row, row.transpose(), tag);
}

Game2x2 make_game(std::string name, const Eigen::Matrix2d& row, const Eigen::Matrix2d& col,
                  GameClass tag, std::array<std::array<std::string, 2>, 2> actions) {
  Game2x2 g{std::move(name), row, col, std::move(actions), tag};
  validate_ordering(g);
  return g;
}

Game2x2 prisoners_dilemma() { return make_game("PD", 5, 3, 1, 0, GameClass::PrisonersDilemma); }

Game2x2 chicken() { return make_game("Chicken", 4, 3, 1, 2, GameClass::Chicken); }

Game2x2 due_care_game() {
  // Row: pedestrian, column: motorist. Action 0 = NoCare, 1 = DueCare.
  Eigen::Matrix2d pedestrian;
  pedestrian << -100, -100, -110, -20;
  Eigen::Matrix2d motorist;
  motorist << 0, -10, 0, -10;
  return make_game("DueCare", pedestrian, motorist, GameClass::DueCare,
                   {{{"NoCare", "DueCare"}, {"NoCare", "DueCare"}}});
}

Game2x2 snowdrift(double benefit, double cost) {
  return make_game("Snowdrift", benefit, benefit - cost / 2, 0.0, benefit - cost,
                   GameClass::Snowdrift);
}

std::optional<int> strict_dominant_strategy(const Game2x2& game, Player player) {
  // payoff(own, other) for the requested player
  auto payoff = [&](int own, int other) {
    return player == Player::Row ? game.row(own, other) : game.col(other, own);
  };
  for (int a = 0; a < 2; ++a) {
    const int b = 1 - a;
    if (payoff(a, 0) > payoff(b, 0) && payoff(a, 1) > payoff(b, 1)) return a;
  }
  return std::nullopt;
}

std::vector<ActionProfile> pure_nash_equilibria(const Game2x2& game) {
  std::vector<ActionProfile> out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const bool row_ok = game.row(i, j) >= game.row(1 - i, j);
      const bool col_ok = game.col(i, j) >= game.col(i, 1 - j);
      if (row_ok && col_ok) out.push_back({i, j});
    }
  }
  return out;
}

void validate(const TravelersDilemma& td) {
  if (td.low >= td.high) throw std::invalid_argument("travelers dilemma needs low < high");
  if (!(td.bonus > 0)) throw std::invalid_argument("travelers dilemma needs bonus > 0");
}

std::pair<double, double> travelers_payoffs(const TravelersDilemma& td, int a, int b) {
  if (a == b) return {double(a), double(b)};
  const double lower = std::min(a, b);
  if (a < b) return {lower + td.bonus, lower - td.bonus};
  return {lower - td.bonus, lower + td.bonus};
}

std::pair<int, int> travelers_nash(const TravelersDilemma& td) {
  validate(td);
  const int n = td.high - td.low + 1;
  // best[j] = best payoff the first traveler can get against claim j;
  // the game is symmetric so the same table serves the second traveler.
  std::vector<double> best(n, -std::numeric_limits<double>::infinity());
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      best[j] = std::max(best[j], travelers_payoffs(td, td.low + i, td.low + j).first);
    }
  }
  std::vector<std::pair<int, int>> found;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto [pa, pb] = travelers_payoffs(td, td.low + i, td.low + j);
      if (pa >= best[j] && pb >= best[i]) found.emplace_back(td.low + i, td.low + j);
    }
  }
  if (found.size() != 1) {
    throw NoUniqueEquilibrium("travelers dilemma has " + std::to_string(found.size()) +
                              " pure equilibria");
  }
  return found.front();
}

void validate(const ThresholdGame& tg) {
  if (tg.n_players < 2) throw std::invalid_argument("threshold game needs at least 2 players");
  if (tg.threshold < 1 || tg.threshold > tg.n_players) {
    throw std::invalid_argument("threshold must lie in [1, n_players]");
  }
  if (!(tg.cost > 0) || !(tg.benefit > 0)) {
    throw std::invalid_argument("threshold game needs positive benefit and cost");
  }
  if (!(tg.benefit > tg.cost / tg.threshold)) {
    throw std::invalid_argument("threshold game needs benefit > cost / threshold");
  }
}

ThresholdPayoffs threshold_payoffs(const ThresholdGame& tg, int k) {
  if (k < 0 || k > tg.n_players) throw std::out_of_range("cooperator count out of range");
  if (k == 0) return {std::nullopt, 0.0};
  if (k >= tg.threshold) return {tg.benefit - tg.cost / k, tg.benefit};
  return {-tg.cost / tg.threshold, 0.0};
}

}  // namespace dilemma
