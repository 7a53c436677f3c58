#ifndef DILEMMA_MATCH_HPP
#define DILEMMA_MATCH_HPP

#include <cstdint>
#include <string_view>
#include <vector>

#include "dilemma/game.hpp"
#include "dilemma/markov.hpp"
#include "dilemma/rng.hpp"
#include "dilemma/strategy.hpp"

namespace dilemma {

enum class PayoffMethod { Stationary, Cycle, Absorption, Simulated };

std::string_view to_string(PayoffMethod m);

/// Per-round payoffs of X (row player) and Y.
struct PayoffPair {
  double s_x = 0;
  double s_y = 0;
  PayoffMethod method = PayoffMethod::Stationary;
  double stderr_x = 0;  // Simulated only
  double stderr_y = 0;
};

struct MatchParams {
  std::int64_t rounds = 200;
  double noise_eps = 0.0;
  std::uint64_t seed = kDefaultSeed;
  bool record_trace = false;

  bool operator==(const MatchParams&) const = default;
};

void validate(const MatchParams& params);

/// Payoffs from the unique stationary distribution. Throws NotErgodic.
PayoffPair exact_payoffs(const MemoryOneStrategy& x, const MemoryOneStrategy& y,
                         const Game2x2& game);

/// Deterministic pair: follows the trajectory from the initial moves until a
/// joint state repeats and averages over the cycle.
PayoffPair cycle_payoffs(const MemoryOneStrategy& x, const MemoryOneStrategy& y,
                         const Game2x2& game);

/// Exact long-run payoffs for any pair: stationary solve when the chain has a
/// single closed class, cycle average for deterministic pairs, and absorption
/// weighting from the initial moves otherwise.
PayoffPair long_run_payoffs(const MemoryOneStrategy& x, const MemoryOneStrategy& y,
                            const Game2x2& game);

/// Long-run occupancy of the joint states from the initial moves.
Eigen::Vector4d long_run_outcomes(const MemoryOneStrategy& x, const MemoryOneStrategy& y);

struct SimulatedMatch {
  PayoffPair payoffs;
  std::vector<std::uint8_t> trace;  // joint state index per round, if recorded
};

/// Plays `rounds` rounds; each intended move flips with probability noise_eps.
/// Standard errors come from batch means, so serial correlation is accounted
/// for.
SimulatedMatch simulate_match(const MemoryOneStrategy& x, const MemoryOneStrategy& y,
                              const Game2x2& game, const MatchParams& params);

}  // namespace dilemma

#endif  // DILEMMA_MATCH_HPP
