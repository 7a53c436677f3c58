#ifndef DILEMMA_TOURNAMENT_HPP
#define DILEMMA_TOURNAMENT_HPP

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dilemma/game.hpp"
#include "dilemma/match.hpp"
#include "dilemma/strategy.hpp"

namespace dilemma {

enum class Scoring { ExactStationary, Simulated };

std::string_view to_string(Scoring s);
Scoring scoring_from_string(std::string_view s);

struct TournamentConfig {
  std::vector<MemoryOneStrategy> roster;
  Game2x2 game = prisoners_dilemma();
  MatchParams match{};
  int replicates = 1;
  bool include_self_play = true;
  Scoring scoring = Scoring::ExactStationary;
  int threads = 1;
};

void validate(const TournamentConfig& config);

enum class Outcome { Win, Loss, Draw };

struct TournamentResult {
  std::vector<std::string> names;
  Eigen::VectorXd total;     // mean over replicates of summed per-round match payoffs
  Eigen::VectorXd total_sd;  // sample sd over replicates (0 for one replicate)
  std::vector<int> wins, losses, draws;
  /// payoff(i, j): i's mean per-round payoff against j; NaN on the diagonal
  /// when self-play is off.
  Eigen::MatrixXd payoff;
  /// outcome[i][j] from i's side; self-pairs are draws.
  std::vector<std::vector<Outcome>> outcome;
  std::vector<int> rank;  // strategy indices, best first

  int index_of(std::string_view name) const;
};

/// Every unordered pair plays once per replicate (self-pairs if enabled).
/// Exact scoring folds the match noise into both strategies and uses
/// long-run payoffs; simulated scoring plays finite matches on independent
/// substreams keyed by (seed, pair, replicate).
TournamentResult round_robin(const TournamentConfig& config);

const Eigen::MatrixXd& pairwise_table(const TournamentResult& result);

/// ZDGTFT-2, Extort-2, TFT, GTFT, WSLS, AllC, AllD, Grim, Random.
std::vector<MemoryOneStrategy> figure3_roster(const Game2x2& game = prisoners_dilemma());

}  // namespace dilemma

#endif  // DILEMMA_TOURNAMENT_HPP
