#ifndef DILEMMA_MULTIPLAYER_HPP
#define DILEMMA_MULTIPLAYER_HPP

#include <vector>

#include <Eigen/Dense>

#include "dilemma/game.hpp"
#include "dilemma/strategy.hpp"

namespace dilemma {

/// Payoffs seen by one player of an N-player threshold game as a function of
/// how many of the other N-1 players cooperate.
struct GroupPayoffs {
  Eigen::VectorXd cooperator;  // a_j: own C, j co-players cooperate
  Eigen::VectorXd defector;    // b_j: own D, j co-players cooperate
};

GroupPayoffs group_payoffs(const ThresholdGame& tg);

/// Memory-one group strategy state index: own move C with j cooperating
/// co-players is j; own move D is N + j.
int group_state(bool own_defects, int cooperating_coplayers, int n_players);

/// For each state, the focal player's payoff and the mean co-player payoff.
struct GroupStatePayoffs {
  Eigen::VectorXd focal;
  Eigen::VectorXd others;
};

GroupStatePayoffs group_state_payoffs(const ThresholdGame& tg);

/// Cooperation probabilities enforcing focal - l = chi * (others - l):
///   p = repeat + phi * [(focal - l) - chi * (others - l)]
/// where `repeat` is 1 on states with own move C.
Eigen::VectorXd group_zd_direction(const ThresholdGame& tg, double baseline, double chi);
double group_max_phi(const ThresholdGame& tg, double baseline, double chi);
Eigen::VectorXd group_zd_strategy(const ThresholdGame& tg, double baseline, double chi,
                                  double phi);

/// Mutual-cooperation payoff a_{N-1}; the generous baseline.
double group_generous_baseline(const ThresholdGame& tg);
/// Mutual-defection payoff b_0; the extortionate baseline.
double group_extortionate_baseline(const ThresholdGame& tg);

struct RegionMap {
  std::vector<double> baselines;   // rows of `feasible`
  std::vector<double> chis;        // columns of every grid
  std::vector<int> thresholds;     // rows of `generous` / `extortionate`
  std::vector<std::vector<char>> feasible;      // [baseline][chi] for the given game
  std::vector<std::vector<char>> generous;      // [threshold][chi], l = a_{N-1}
  std::vector<std::vector<char>> extortionate;  // [threshold][chi], l = b_0
};

/// Marks every grid cell where a group ZD strategy exists (max phi > 0).
/// An empty threshold list scans only the game's own threshold.
RegionMap zd_region_scan(const ThresholdGame& tg, const std::vector<double>& baselines,
                         const std::vector<double>& chis, std::vector<int> thresholds = {});

}  // namespace dilemma

#endif  // DILEMMA_MULTIPLAYER_HPP
