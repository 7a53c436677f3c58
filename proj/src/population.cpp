#include "dilemma/population.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dilemma/errors.hpp"
#include "dilemma/match.hpp"
#include "dilemma/parallel.hpp"

namespace dilemma {

std::int64_t PopulationState::size() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

int PopulationState::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

PopulationState homogeneous(const std::vector<std::string>& names, int strategy, std::int64_t n) {
  PopulationState s{names, std::vector<std::int64_t>(names.size(), 0)};
  s.counts.at(static_cast<std::size_t>(strategy)) = n;
  return s;
}

std::string_view to_string(Process p) { return p == Process::Moran ? "moran" : "fermi"; }

Process process_from_string(std::string_view s) {
  if (s == "fermi") return Process::PairwiseFermi;
  if (s == "moran") return Process::Moran;
  throw std::invalid_argument("unknown process: " + std::string(s));
}

void validate(const EvolutionParams& p) {
  if (!(p.selection_strength >= 0)) throw std::invalid_argument("selection strength must be >= 0");
  if (!(p.mutation_rate >= 0 && p.mutation_rate <= 1)) {
    throw std::invalid_argument("mutation rate must lie in [0, 1]");
  }
  if (p.generations < 0) throw std::invalid_argument("generations must be >= 0");
  if (p.record_every < 1) throw std::invalid_argument("record interval must be >= 1");
}

Eigen::MatrixXd PairOutcomes::payoffs(const Game2x2& game) const {
  const Eigen::Vector4d focal = game.focal_payoffs();
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = at(i, j).dot(focal);
  return a;
}

Eigen::MatrixXd PairOutcomes::cooperation() const {
  Eigen::MatrixXd c(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i, j) = at(i, j)(0) + at(i, j)(1);
  return c;
}

PairOutcomes pair_outcomes(const std::vector<MemoryOneStrategy>& roster, double noise_eps,
                           int threads) {
  PairOutcomes out;
  out.n = static_cast<int>(roster.size());
  out.occupancy.resize(roster.size() * roster.size());
  std::vector<MemoryOneStrategy> noisy;
  for (const auto& s : roster) noisy.push_back(with_noise(s, noise_eps));
  parallel_for(out.occupancy.size(), threads, [&](std::size_t k) {
    const std::size_t i = k / roster.size(), j = k % roster.size();
    out.occupancy[k] = long_run_outcomes(noisy[i], noisy[j]);
  });
  return out;
}

Eigen::MatrixXd payoff_matrix(const std::vector<MemoryOneStrategy>& roster, const Game2x2& game,
                              double noise_eps, int threads) {
  return pair_outcomes(roster, noise_eps, threads).payoffs(game);
}

double expected_payoff(int strategy, const PopulationState& state, const Eigen::MatrixXd& a) {
  const std::int64_t n = state.size();
  if (n < 2) throw std::invalid_argument("population needs at least 2 individuals");
  double sum = 0;
  for (std::size_t j = 0; j < state.counts.size(); ++j) {
    sum += static_cast<double>(state.counts[j]) * a(strategy, static_cast<Eigen::Index>(j));
  }
  sum -= a(strategy, strategy);
  return sum / static_cast<double>(n - 1);
}

double fermi_probability(double beta, double diff) {
  const double z = beta * diff;
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

int strategy_of_individual(const PopulationState& s, std::int64_t individual) {
  for (std::size_t i = 0; i < s.counts.size(); ++i) {
    if (individual < s.counts[i]) return static_cast<int>(i);
    individual -= s.counts[i];
  }
  throw std::logic_error("individual index out of range");
}

void replace(PopulationState& s, int from, int to) {
  --s.counts[static_cast<std::size_t>(from)];
  ++s.counts[static_cast<std::size_t>(to)];
}

}  // namespace

PopulationState fermi_step(PopulationState state, const EvolutionParams& params,
                           const Eigen::MatrixXd& a, CounterRng& rng) {
  const std::int64_t n = state.size();
  const auto focal_idx = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n)));
  const int focal = strategy_of_individual(state, focal_idx);
  if (params.mutation_rate > 0 && rng.bernoulli(params.mutation_rate)) {
    replace(state, focal, static_cast<int>(rng.below(state.counts.size())));
    return state;
  }
  auto model_idx = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n - 1)));
  if (model_idx >= focal_idx) ++model_idx;
  const int model = strategy_of_individual(state, model_idx);
  if (model == focal) return state;
  const double diff = expected_payoff(model, state, a) - expected_payoff(focal, state, a);
  if (rng.bernoulli(fermi_probability(params.selection_strength, diff))) {
    replace(state, focal, model);
  }
  return state;
}

PopulationState moran_step(PopulationState state, const EvolutionParams& params,
                           const Eigen::MatrixXd& a, CounterRng& rng) {
  const std::size_t k = state.counts.size();
  std::vector<double> pi(k, 0.0);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i) {
    if (state.counts[i] == 0) continue;
    pi[i] = params.selection_strength * expected_payoff(static_cast<int>(i), state, a);
    top = std::max(top, pi[i]);
  }
  std::vector<double> weight(k, 0.0);
  double total = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (state.counts[i] == 0) continue;
    weight[i] = static_cast<double>(state.counts[i]) * std::exp(pi[i] - top);
    total += weight[i];
  }
  double u = rng.uniform() * total;
  int parent = -1;
  for (std::size_t i = 0; i < k; ++i) {
    if (weight[i] <= 0) continue;
    parent = static_cast<int>(i);
    if (u < weight[i]) break;
    u -= weight[i];
  }
  const int dead = strategy_of_individual(
      state, static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(state.size()))));
  int child = parent;
  if (params.mutation_rate > 0 && rng.bernoulli(params.mutation_rate)) {
    child = static_cast<int>(rng.below(k));
  }
  replace(state, dead, child);
  return state;
}

PopulationState evolution_step(PopulationState state, const EvolutionParams& params,
                               const Eigen::MatrixXd& a, CounterRng& rng) {
  if (params.process == Process::Moran) return moran_step(std::move(state), params, a, rng);
  return fermi_step(std::move(state), params, a, rng);
}

double fixation_probability(const Eigen::Matrix2d& a, std::int64_t n, double beta) {
  if (n < 2) throw std::invalid_argument("population needs at least 2 individuals");
  const double nm1 = static_cast<double>(n - 1);
  // log of prod_{i<=k} T-(i)/T+(i), accumulated for k = 1..n-1
  std::vector<double> logs;
  logs.reserve(static_cast<std::size_t>(n - 1));
  double acc = 0, top = 0;
  for (std::int64_t i = 1; i < n; ++i) {
    const double di = static_cast<double>(i), dn = static_cast<double>(n);
    // pi_invader - pi_resident, grouped so a neutral pair gives exactly 0
    const double gap =
        ((di - 1) * (a(0, 0) - a(1, 0)) + (dn - di) * (a(0, 1) - a(1, 1)) + (a(1, 1) - a(1, 0))) / nm1;
    acc += -beta * gap;
    logs.push_back(acc);
    top = std::max(top, acc);
  }
  double scaled = 0;
  for (double l : logs) scaled += std::exp(l - top);
  // 1 / (1 + sum exp(l)) written with the largest term factored out
  return std::exp(-top) / (std::exp(-top) + scaled);
}

double fixation_probability(int invader, int resident, std::int64_t n, double beta,
                            const Eigen::MatrixXd& a) {
  Eigen::Matrix2d sub;
  sub << a(invader, invader), a(invader, resident), a(resident, invader), a(resident, resident);
  return fixation_probability(sub, n, beta);
}

FixationEstimate fixation_monte_carlo(const Eigen::Matrix2d& a, std::int64_t n,
                                      const EvolutionParams& params, std::int64_t runs,
                                      int threads) {
  EvolutionParams p = params;
  p.mutation_rate = 0;
  const Eigen::MatrixXd payoffs = a;
  std::vector<char> fixed(static_cast<std::size_t>(runs), 0);
  parallel_for(fixed.size(), threads, [&](std::size_t r) {
    CounterRng rng(derive_seed(params.seed, 0xF1F1, r));
    PopulationState s{{"invader", "resident"}, {1, n - 1}};
    while (s.counts[0] != 0 && s.counts[1] != 0) s = evolution_step(std::move(s), p, payoffs, rng);
    fixed[r] = s.counts[0] == n;
  });
  const double hits = static_cast<double>(std::count(fixed.begin(), fixed.end(), 1));
  const double prob = hits / static_cast<double>(runs);
  return {prob, std::sqrt(prob * (1 - prob) / static_cast<double>(runs)), runs};
}

Trajectory evolve_trajectory(const PopulationState& initial, const EvolutionParams& params,
                             const Eigen::MatrixXd& a) {
  validate(params);
  if (initial.size() < 2) throw std::invalid_argument("population needs at least 2 individuals");
  CounterRng rng(derive_seed(params.seed, 0));
  Trajectory t{initial.names, {0}, {initial.counts}};
  PopulationState s = initial;
  for (std::int64_t step = 1; step <= params.generations; ++step) {
    s = evolution_step(std::move(s), params, a, rng);
    if (step % params.record_every == 0 || step == params.generations) {
      t.steps.push_back(step);
      t.counts.push_back(s.counts);
    }
  }
  return t;
}

std::optional<Game2x2> mutate_payoffs(const Game2x2& game, const PayoffMutation& kernel,
                                      CounterRng& rng) {
  const bool reward = rng.bernoulli(0.5);
  const double shift = kernel.drift + kernel.delta * (2 * rng.uniform() - 1);
  double T = game.T(), R = game.R();
  (reward ? R : T) += shift;
  try {
    Game2x2 g = make_game(game.name, T, R, game.P(), game.S(), GameClass::PrisonersDilemma);
    g.actions = game.actions;
    return g;
  } catch (const OrderingViolation&) {
    return std::nullopt;
  }
}

double cooperation_level(const PopulationState& state, const Eigen::MatrixXd& c) {
  const double n = static_cast<double>(state.size());
  double sum = 0;
  for (std::size_t i = 0; i < state.counts.size(); ++i) {
    for (std::size_t j = 0; j < state.counts.size(); ++j) {
      const double ci = static_cast<double>(state.counts[i]);
      const double cj = static_cast<double>(state.counts[j]) - (i == j ? 1.0 : 0.0);
      sum += ci * cj * c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return sum / (n * (n - 1));
}

CoevolutionTrajectory coevolve(const PopulationState& initial, const EvolutionParams& params,
                               const PayoffMutation& kernel, const PairOutcomes& outcomes,
                               const Game2x2& game) {
  validate(params);
  if (!(kernel.rate >= 0 && kernel.rate <= 1)) {
    throw std::invalid_argument("payoff mutation rate must lie in [0, 1]");
  }
  validate_ordering(make_game(game.name, game.T(), game.R(), game.P(), game.S(),
                              GameClass::PrisonersDilemma));
  CounterRng strategy_rng(derive_seed(params.seed, 0));
  CounterRng payoff_rng(derive_seed(params.seed, 1));
  const Eigen::MatrixXd coop = outcomes.cooperation();

  Game2x2 current = game;
  Eigen::MatrixXd a = outcomes.payoffs(current);
  PopulationState s = initial;

  CoevolutionTrajectory out;
  out.population = {initial.names, {0}, {initial.counts}};
  auto record = [&] {
    out.reward.push_back(current.R());
    out.temptation.push_back(current.T());
    out.cooperation.push_back(cooperation_level(s, coop));
  };
  record();
  for (std::int64_t step = 1; step <= params.generations; ++step) {
    if (kernel.rate > 0 && payoff_rng.bernoulli(kernel.rate)) {
      if (auto next = mutate_payoffs(current, kernel, payoff_rng)) {
        current = std::move(*next);
        a = outcomes.payoffs(current);
      }
    }
    s = evolution_step(std::move(s), params, a, strategy_rng);
    if (step % params.record_every == 0 || step == params.generations) {
      out.population.steps.push_back(step);
      out.population.counts.push_back(s.counts);
      record();
    }
  }
  return out;
}

}  // namespace dilemma
