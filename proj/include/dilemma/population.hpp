#ifndef DILEMMA_POPULATION_HPP
#define DILEMMA_POPULATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dilemma/game.hpp"
#include "dilemma/rng.hpp"
#include "dilemma/strategy.hpp"

namespace dilemma {

/// Strategy counts in a well-mixed population, indexed like the roster.
struct PopulationState {
  std::vector<std::string> names;
  std::vector<std::int64_t> counts;

  std::int64_t size() const;
  int index_of(std::string_view name) const;
  bool operator==(const PopulationState&) const = default;
};

/// Everyone plays `strategy`; the other roster entries are present at zero.
PopulationState homogeneous(const std::vector<std::string>& names, int strategy, std::int64_t n);

enum class Process { PairwiseFermi, Moran };

std::string_view to_string(Process p);
Process process_from_string(std::string_view s);

struct EvolutionParams {
  double selection_strength = 1.0;  // beta
  double mutation_rate = 0.0;
  std::int64_t generations = 0;  // elementary update steps
  std::uint64_t seed = kDefaultSeed;
  Process process = Process::PairwiseFermi;
  std::int64_t record_every = 1;
};

void validate(const EvolutionParams& params);

/// Long-run joint-state occupancy for every ordered roster pair (row strategy
/// as X). Payoffs for any game follow by a dot product, so the pairs are
/// solved once per roster.
struct PairOutcomes {
  int n = 0;
  std::vector<Eigen::Vector4d> occupancy;  // n * n, row-major

  const Eigen::Vector4d& at(int i, int j) const { return occupancy[std::size_t(i) * n + j]; }
  Eigen::MatrixXd payoffs(const Game2x2& game) const;
  /// Chance that i cooperates in a round against j.
  Eigen::MatrixXd cooperation() const;
};

PairOutcomes pair_outcomes(const std::vector<MemoryOneStrategy>& roster, double noise_eps = 0.0,
                           int threads = 1);

/// a(i, j) = long-run per-round payoff of i against j.
Eigen::MatrixXd payoff_matrix(const std::vector<MemoryOneStrategy>& roster, const Game2x2& game,
                              double noise_eps = 0.0, int threads = 1);

/// Mean payoff of one `strategy` player against everybody else.
double expected_payoff(int strategy, const PopulationState& state, const Eigen::MatrixXd& payoffs);

/// 1 / (1 + exp(-beta * diff))
double fermi_probability(double beta, double payoff_diff);

/// Random focal imitates a random other individual with Fermi probability,
/// or with probability mutation_rate switches to a uniform roster strategy.
PopulationState fermi_step(PopulationState state, const EvolutionParams& params,
                           const Eigen::MatrixXd& payoffs, CounterRng& rng);

/// Birth proportional to exp(beta * payoff), death uniform.
PopulationState moran_step(PopulationState state, const EvolutionParams& params,
                           const Eigen::MatrixXd& payoffs, CounterRng& rng);

PopulationState evolution_step(PopulationState state, const EvolutionParams& params,
                               const Eigen::MatrixXd& payoffs, CounterRng& rng);

/// Chance that one invader (index 0 of `payoffs`) takes over N-1 residents
/// (index 1), from the birth-death product formula. Both processes share
/// the ratio exp(-beta * (pi_invader - pi_resident)), so one formula serves.
double fixation_probability(const Eigen::Matrix2d& payoffs, std::int64_t n, double beta);

double fixation_probability(int invader, int resident, std::int64_t n, double beta,
                            const Eigen::MatrixXd& payoffs);

struct FixationEstimate {
  double probability = 0;
  double standard_error = 0;
  std::int64_t runs = 0;
};

/// Runs the stochastic process from one invader until absorption.
FixationEstimate fixation_monte_carlo(const Eigen::Matrix2d& payoffs, std::int64_t n,
                                      const EvolutionParams& params, std::int64_t runs,
                                      int threads = 1);

struct Trajectory {
  std::vector<std::string> names;
  std::vector<std::int64_t> steps;
  std::vector<std::vector<std::int64_t>> counts;  // per recorded step
};

Trajectory evolve_trajectory(const PopulationState& initial, const EvolutionParams& params,
                             const Eigen::MatrixXd& payoffs);

/// Bounded random perturbation of R or T applied with probability `rate`
/// before each strategy step. Proposals breaking the prisoner's dilemma
/// ordering are rejected.
struct PayoffMutation {
  double rate = 0.01;
  double delta = 0.0;
  double drift = 0.0;  // shift of the perturbation mean
  bool operator==(const PayoffMutation&) const = default;
};

struct CoevolutionTrajectory {
  Trajectory population;
  std::vector<double> reward, temptation;
  std::vector<double> cooperation;  // population-mean chance of cooperating
};

CoevolutionTrajectory coevolve(const PopulationState& initial, const EvolutionParams& params,
                               const PayoffMutation& kernel, const PairOutcomes& outcomes,
                               const Game2x2& game);

/// Proposes one perturbation; empty when it violates the ordering.
std::optional<Game2x2> mutate_payoffs(const Game2x2& game, const PayoffMutation& kernel,
                                      CounterRng& rng);

/// Mean chance of cooperating in a random encounter between two distinct
/// members of the population.
double cooperation_level(const PopulationState& state, const Eigen::MatrixXd& cooperation);

}  // namespace dilemma

#endif  // DILEMMA_POPULATION_HPP
