#ifndef DILEMMA_GAME_HPP
#define DILEMMA_GAME_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace dilemma {

enum class GameClass { PrisonersDilemma, Chicken, Snowdrift, DueCare, Custom };

std::string_view to_string(GameClass c);
GameClass game_class_from_string(std::string_view s);

enum class Player { Row = 0, Col = 1 };

/// Two-player, two-action bimatrix game. Action 0 is "C" and action 1 is "D"
/// unless the labels say otherwise. Entry (i, j) is the payoff when the row
/// player picks i and the column player picks j.
struct Game2x2 {
  std::string name;
  Eigen::Matrix2d row = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d col = Eigen::Matrix2d::Zero();
  std::array<std::array<std::string, 2>, 2> actions{{{"C", "D"}, {"C", "D"}}};
  GameClass tag = GameClass::Custom;

  bool symmetric() const { return col == row.transpose(); }

  // Symmetric-game shorthands, read from the row player's matrix.
  double R() const { return row(0, 0); }
  double S() const { return row(0, 1); }
  double T() const { return row(1, 0); }
  double P() const { return row(1, 1); }

  /// Row player's payoff over joint states (CC, CD, DC, DD).
  Eigen::Vector4d focal_payoffs() const { return {row(0, 0), row(0, 1), row(1, 0), row(1, 1)}; }
  /// Column player's payoff over the same joint states.
  Eigen::Vector4d opponent_payoffs() const { return {col(0, 0), col(0, 1), col(1, 0), col(1, 1)}; }

  const std::string& action_label(Player p, int a) const {
    return actions[static_cast<int>(p)][static_cast<std::size_t>(a)];
  }

  bool operator==(const Game2x2&) const = default;
};

struct ActionProfile {
  int row = 0;
  int col = 0;
  bool operator==(const ActionProfile&) const = default;
};

/// Builds a symmetric game from the usual T, R, P, S quadruple and checks the
/// ordering its class requires.
Game2x2 make_game(std::string name, double T, double R, double P, double S,
                  GameClass tag = GameClass::Custom);

/// Builds a (possibly asymmetric) game from full payoff matrices.
Game2x2 make_game(std::string name, const Eigen::Matrix2d& row, const Eigen::Matrix2d& col,
                  GameClass tag = GameClass::Custom,
                  std::array<std::array<std::string, 2>, 2> actions = {{{"C", "D"}, {"C", "D"}}});

// Throws OrderingViolation naming the failing inequality.
void validate_ordering(const Game2x2& game);

Game2x2 prisoners_dilemma();  // T=5, R=3, P=1, S=0
Game2x2 chicken();            // T=4, R=3, S=2, P=1
Game2x2 due_care_game();
Game2x2 snowdrift(double benefit, double cost);

std::optional<int> strict_dominant_strategy(const Game2x2& game, Player player);

/// All pure profiles where no player gains by deviating, row-major order.
std::vector<ActionProfile> pure_nash_equilibria(const Game2x2& game);

struct TravelersDilemma {
  int low = 2;
  int high = 100;
  double bonus = 2.0;
  bool operator==(const TravelersDilemma&) const = default;
};

void validate(const TravelersDilemma& td);

/// Payoffs (first, second) when the two travelers claim the given amounts.
std::pair<double, double> travelers_payoffs(const TravelersDilemma& td, int claim_a, int claim_b);

/// Enumerates every claim pair and returns the unique pure equilibrium as
/// claims. Throws NoUniqueEquilibrium otherwise.
std::pair<int, int> travelers_nash(const TravelersDilemma& td);

/// N-player snowdrift with a cooperator threshold. At least `threshold`
/// cooperators are needed to produce the benefit; the cost is shared among
/// cooperators once it is produced and sunk otherwise.
struct ThresholdGame {
  int n_players = 8;
  int threshold = 4;
  double benefit = 10.0;
  double cost = 4.0;
  bool operator==(const ThresholdGame&) const = default;
};

void validate(const ThresholdGame& tg);

struct ThresholdPayoffs {
  std::optional<double> cooperator;  // empty when nobody cooperates
  double defector = 0.0;
};

ThresholdPayoffs threshold_payoffs(const ThresholdGame& tg, int cooperators);

}  // namespace dilemma

#endif  // DILEMMA_GAME_HPP
