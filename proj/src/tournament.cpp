#include "dilemma/tournament.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "dilemma/parallel.hpp"

namespace dilemma {

std::string_view to_string(Scoring s) {
  return s == Scoring::ExactStationary ? "exact" : "simulated";
}

Scoring scoring_from_string(std::string_view s) {
  if (s == "exact") return Scoring::ExactStationary;
  if (s == "simulated") return Scoring::Simulated;
  throw std::invalid_argument("unknown scoring: " + std::string(s));
}

void validate(const TournamentConfig& config) {
  std::set<std::string> names;
  for (const auto& s : config.roster) {
    if (!names.insert(s.name).second) {
      throw std::invalid_argument("duplicate roster name: " + s.name);
    }
    if (!s.valid()) throw std::invalid_argument("invalid strategy: " + s.name);
  }
  if (names.size() < 2) throw std::invalid_argument("roster needs at least 2 strategies");
  if (config.replicates < 1) throw std::invalid_argument("replicates must be at least 1");
  validate(config.match);
}

int TournamentResult::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

namespace {

struct Pairing {
  int i, j;
};

// One match outcome per replicate.
struct PairScores {
  std::vector<double> x, y, se;  // se: match-internal stderr of x - y
};

}  // namespace

TournamentResult round_robin(const TournamentConfig& config) {
  validate(config);
  const int n = static_cast<int>(config.roster.size());
  const bool exact = config.scoring == Scoring::ExactStationary;
  const int reps = exact ? 1 : config.replicates;

  std::vector<Pairing> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + (config.include_self_play ? 0 : 1); j < n; ++j) pairs.push_back({i, j});

  std::vector<MemoryOneStrategy> noisy;
  for (const auto& s : config.roster) noisy.push_back(with_noise(s, config.match.noise_eps));

  std::vector<PairScores> scores(pairs.size());
  for (auto& s : scores) {
    s.x.resize(reps);
    s.y.resize(reps);
    s.se.resize(reps);
  }
  const std::size_t tasks = pairs.size() * static_cast<std::size_t>(reps);
  parallel_for(tasks, config.threads, [&](std::size_t task) {
    const std::size_t k = task / reps;
    const int r = static_cast<int>(task % reps);
    const auto [i, j] = pairs[k];
    if (exact) {
      const PayoffPair pp = long_run_payoffs(noisy[i], noisy[j], config.game);
      scores[k].x[r] = pp.s_x;
      scores[k].y[r] = pp.s_y;
      scores[k].se[r] = 0;
    } else {
      MatchParams mp = config.match;
      mp.seed = derive_seed(config.match.seed, k, r);
      mp.record_trace = false;
      const PayoffPair pp =
          simulate_match(config.roster[i], config.roster[j], config.game, mp).payoffs;
      scores[k].x[r] = pp.s_x;
      scores[k].y[r] = pp.s_y;
      scores[k].se[r] = std::hypot(pp.stderr_x, pp.stderr_y);
    }
  });

  TournamentResult res;
  for (const auto& s : config.roster) res.names.push_back(s.name);
  res.payoff = Eigen::MatrixXd::Constant(n, n, std::numeric_limits<double>::quiet_NaN());
  res.wins.assign(n, 0);
  res.losses.assign(n, 0);
  res.draws.assign(n, 0);
  res.outcome.assign(n, std::vector<Outcome>(n, Outcome::Draw));
  Eigen::MatrixXd per_rep_total = Eigen::MatrixXd::Zero(n, reps);

  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs[k];
    const auto& sc = scores[k];
    double mx = 0, my = 0;
    for (int r = 0; r < reps; ++r) {
      mx += sc.x[r];
      my += sc.y[r];
      per_rep_total(i, r) += sc.x[r];
      if (i != j) per_rep_total(j, r) += sc.y[r];
    }
    mx /= reps;
    my /= reps;
    res.payoff(i, j) = mx;
    res.payoff(j, i) = my;
    if (i == j) {
      res.draws[i] += 1;
      continue;
    }

    double tolerance = 1e-9;
    if (!exact) {
      if (reps >= 2) {
        double mean = 0, ss = 0;
        for (int r = 0; r < reps; ++r) mean += sc.x[r] - sc.y[r];
        mean /= reps;
        for (int r = 0; r < reps; ++r) {
          const double d = sc.x[r] - sc.y[r] - mean;
          ss += d * d;
        }
        tolerance = std::sqrt(ss / (reps - 1) / reps);
      } else {
        tolerance = sc.se[0];
      }
    }
    const double diff = mx - my;
    if (diff > tolerance) {
      res.outcome[i][j] = Outcome::Win;
      res.outcome[j][i] = Outcome::Loss;
      ++res.wins[i];
      ++res.losses[j];
    } else if (-diff > tolerance) {
      res.outcome[i][j] = Outcome::Loss;
      res.outcome[j][i] = Outcome::Win;
      ++res.losses[i];
      ++res.wins[j];
    } else {
      ++res.draws[i];
      ++res.draws[j];
    }
  }

  res.total = per_rep_total.rowwise().mean();
  res.total_sd = Eigen::VectorXd::Zero(n);
  if (reps >= 2) {
    for (int i = 0; i < n; ++i) {
      const double var = (per_rep_total.row(i).array() - res.total(i)).square().sum() / (reps - 1);
      res.total_sd(i) = std::sqrt(var);
    }
  }

  res.rank.resize(n);
  std::iota(res.rank.begin(), res.rank.end(), 0);
  std::sort(res.rank.begin(), res.rank.end(), [&](int a, int b) {
    if (res.total(a) != res.total(b)) return res.total(a) > res.total(b);
    return res.names[a] < res.names[b];
  });
  return res;
}

const Eigen::MatrixXd& pairwise_table(const TournamentResult& result) { return result.payoff; }

std::vector<MemoryOneStrategy> figure3_roster(const Game2x2& game) {
  std::vector<MemoryOneStrategy> roster{zdgtft2(game), extort2(game)};
  for (const char* name : {"TFT", "GTFT", "WSLS", "AllC", "AllD", "Grim", "Random"}) {
    roster.push_back(classic(name, game));
  }
  return roster;
}

}  // namespace dilemma
