#ifndef DILEMMA_LATTICE_HPP
#define DILEMMA_LATTICE_HPP

#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dilemma/rng.hpp"

namespace dilemma {

enum class Neighborhood { VonNeumann4, Moore8 };
enum class UpdateRule { Asynchronous, Synchronous };

std::string_view to_string(Neighborhood n);
std::string_view to_string(UpdateRule u);
Neighborhood neighborhood_from_string(std::string_view s);
UpdateRule update_rule_from_string(std::string_view s);

/// Square grid with periodic boundaries; each site holds a roster index.
struct LatticeState {
  int side = 0;
  std::vector<std::uint16_t> sites;  // row-major
  Neighborhood neighborhood = Neighborhood::VonNeumann4;
  UpdateRule update = UpdateRule::Asynchronous;

  std::uint16_t at(int r, int c) const { return sites[index(r, c)]; }
  std::size_t index(int r, int c) const;
  bool operator==(const LatticeState&) const = default;
};

/// Each site independently holds strategy 0 with probability `fraction`,
/// otherwise strategy 1.
LatticeState random_lattice(int side, double fraction, std::uint64_t seed,
                            Neighborhood nb = Neighborhood::VonNeumann4,
                            UpdateRule update = UpdateRule::Asynchronous);

struct LatticeParams {
  double selection_strength = 10.0;  // Fermi K = 0.1
  double mutation_rate = 0.0;
  std::int64_t epochs = 100;
  std::uint64_t seed = kDefaultSeed;
  std::vector<std::int64_t> snapshot_epochs;
};

struct LatticeMetrics {
  std::int64_t epoch = 0;
  double cooperator_fraction = 0;
  double largest_cluster = 0;  // largest 4-connected cooperator cluster / L^2
};

struct LatticeRun {
  std::vector<LatticeMetrics> metrics;  // epoch 0 and after every epoch
  std::vector<std::pair<std::int64_t, LatticeState>> snapshots;
  LatticeState final_state;
};

/// Site payoff: sum of pairwise payoffs against each neighbor.
double site_payoff(const LatticeState& lattice, std::size_t site, const Eigen::MatrixXd& payoffs);

/// Fraction of sites holding a cooperator strategy.
double cooperator_fraction(const LatticeState& lattice, const std::vector<char>& cooperator);

/// Size of the largest 4-connected cluster of cooperator sites, over L^2.
double largest_cluster_fraction(const LatticeState& lattice, const std::vector<char>& cooperator);

/// An epoch is L^2 elementary updates (asynchronous) or one sweep of
/// simultaneous updates (synchronous). In each update a site picks a random
/// neighbor and copies it with the Fermi probability of their payoff gap.
LatticeRun lattice_simulate(const LatticeState& lattice, const Eigen::MatrixXd& payoffs,
                            const std::vector<char>& cooperator, const LatticeParams& params);

}  // namespace dilemma

#endif  // DILEMMA_LATTICE_HPP
