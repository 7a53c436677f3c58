#include "dilemma/multiplayer.hpp"

#include <stdexcept>

namespace dilemma {

GroupPayoffs group_payoffs(const ThresholdGame& tg) {
  validate(tg);
  const int n = tg.n_players;
  GroupPayoffs g{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (int j = 0; j < n; ++j) {
    g.cooperator(j) = *threshold_payoffs(tg, j + 1).cooperator;
    g.defector(j) = threshold_payoffs(tg, j).defector;
  }
  return g;
}

int group_state(bool own_defects, int j, int n_players) { return (own_defects ? n_players : 0) + j; }

GroupStatePayoffs group_state_payoffs(const ThresholdGame& tg) {
  const GroupPayoffs g = group_payoffs(tg);
  const int n = tg.n_players;
  const double m = n - 1;
  GroupStatePayoffs out{Eigen::VectorXd(2 * n), Eigen::VectorXd(2 * n)};
  for (int j = 0; j < n; ++j) {
    // Own C, j cooperating co-players: those j see a_j; the n-1-j defectors
    // see j+1 cooperators.
    const double defectors_c = j + 1 < n ? g.defector(j + 1) : 0.0;
    out.focal(group_state(false, j, n)) = g.cooperator(j);
    out.others(group_state(false, j, n)) = (j * g.cooperator(j) + (m - j) * defectors_c) / m;
    // Own D: cooperating co-players see j-1 other cooperators, defectors see j.
    const double cooperators_d = j > 0 ? g.cooperator(j - 1) : 0.0;
    out.focal(group_state(true, j, n)) = g.defector(j);
    out.others(group_state(true, j, n)) = (j * cooperators_d + (m - j) * g.defector(j)) / m;
  }
  return out;
}

namespace {

Eigen::VectorXd repeat_vector(int n) {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(2 * n);
  r.head(n).setOnes();
  return r;
}

}  // namespace

Eigen::VectorXd group_zd_direction(const ThresholdGame& tg, double l, double chi) {
  const GroupStatePayoffs s = group_state_payoffs(tg);
  return (s.focal.array() - l) - chi * (s.others.array() - l);
}

double group_max_phi(const ThresholdGame& tg, double l, double chi) {
  return max_step_in_unit_box(repeat_vector(tg.n_players), group_zd_direction(tg, l, chi));
}

Eigen::VectorXd group_zd_strategy(const ThresholdGame& tg, double l, double chi, double phi) {
  Eigen::VectorXd p = repeat_vector(tg.n_players) + phi * group_zd_direction(tg, l, chi);
  return p.cwiseMax(0.0).cwiseMin(1.0);
}

double group_generous_baseline(const ThresholdGame& tg) {
  return group_payoffs(tg).cooperator(tg.n_players - 1);
}

double group_extortionate_baseline(const ThresholdGame& tg) { return group_payoffs(tg).defector(0); }

RegionMap zd_region_scan(const ThresholdGame& tg, const std::vector<double>& baselines,
                         const std::vector<double>& chis, std::vector<int> thresholds) {
  validate(tg);
  for (double chi : chis) {
    if (!(chi >= 1)) throw std::invalid_argument("chi grid values must be >= 1");
  }
  if (thresholds.empty()) thresholds.push_back(tg.threshold);

  RegionMap map{baselines, chis, thresholds, {}, {}, {}};
  for (double l : baselines) {
    std::vector<char> row;
    for (double chi : chis) row.push_back(group_max_phi(tg, l, chi) > 0);
    map.feasible.push_back(std::move(row));
  }
  for (int m : thresholds) {
    ThresholdGame g = tg;
    g.threshold = m;
    validate(g);
    const double lg = group_generous_baseline(g);
    const double le = group_extortionate_baseline(g);
    std::vector<char> gen, ext;
    for (double chi : chis) {
      gen.push_back(group_max_phi(g, lg, chi) > 0);
      ext.push_back(group_max_phi(g, le, chi) > 0);
    }
    map.generous.push_back(std::move(gen));
    map.extortionate.push_back(std::move(ext));
  }
  return map;
}

}  // namespace dilemma
