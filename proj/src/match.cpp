#include "dilemma/match.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace dilemma {

std::string_view to_string(PayoffMethod m) {
  switch (m) {
    case PayoffMethod::Stationary: return "stationary";
    case PayoffMethod::Cycle: return "cycle";
    case PayoffMethod::Absorption: return "absorption";
    case PayoffMethod::Simulated: return "simulated";
  }
  return "stationary";
}

void validate(const MatchParams& params) {
  if (params.rounds < 1) throw std::invalid_argument("rounds must be at least 1");
  if (!(params.noise_eps >= 0 && params.noise_eps <= 0.5)) {
    throw std::invalid_argument("noise must lie in [0, 0.5]");
  }
}

namespace {

PayoffPair payoffs_from(const Eigen::Vector4d& v, const Game2x2& game, PayoffMethod method) {
  return {v.dot(game.focal_payoffs()), v.dot(game.opponent_payoffs()), method};
}

int joint_state(bool x_defects, bool y_defects) { return 2 * int(x_defects) + int(y_defects); }

}  // namespace

PayoffPair exact_payoffs(const MemoryOneStrategy& x, const MemoryOneStrategy& y,
                         const Game2x2& game) {
  return payoffs_from(stationary_distribution(transition_matrix(x, y)), game,
                      PayoffMethod::Stationary);
}

PayoffPair cycle_payoffs(const MemoryOneStrategy& x, const MemoryOneStrategy& y,
                         const Game2x2& game) {
  if (!x.deterministic() || !y.deterministic()) {
    throw std::invalid_argument("cycle_payoffs needs two deterministic strategies");
  }
  std::array<int, 4> first_seen{-1, -1, -1, -1};
  std::vector<int> path;
  int s = joint_state(x.initial == 0, y.initial == 0);
  while (first_seen[s] < 0) {
    first_seen[s] = static_cast<int>(path.size());
    path.push_back(s);
    const bool xd = x.coop(s) == 0;
    const bool yd = y.coop(swap_perspective(s)) == 0;
    s = joint_state(xd, yd);
  }
  Eigen::Vector4d v = Eigen::Vector4d::Zero();
  const int start = first_seen[s];
  const int len = static_cast<int>(path.size()) - start;
  for (int i = start; i < static_cast<int>(path.size()); ++i) v(path[i]) += 1.0 / len;
  return payoffs_from(v, game, PayoffMethod::Cycle);
}

Eigen::Vector4d long_run_outcomes(const MemoryOneStrategy& x, const MemoryOneStrategy& y) {
  return long_run_distribution(transition_matrix(x, y), initial_distribution(x, y));
}

PayoffPair long_run_payoffs(const MemoryOneStrategy& x, const MemoryOneStrategy& y,
                            const Game2x2& game) {
  const Eigen::Matrix4d m = transition_matrix(x, y);
  if (has_unique_stationary(m)) return exact_payoffs(x, y, game);
  if (x.deterministic() && y.deterministic()) return cycle_payoffs(x, y, game);
  return payoffs_from(long_run_distribution(m, initial_distribution(x, y)), game,
                      PayoffMethod::Absorption);
}

SimulatedMatch simulate_match(const MemoryOneStrategy& x, const MemoryOneStrategy& y,
                              const Game2x2& game, const MatchParams& params) {
  validate(params);
  CounterRng rng(params.seed);
  const double eps = params.noise_eps;
  const Eigen::Vector4d fx = game.focal_payoffs();
  const Eigen::Vector4d fy = game.opponent_payoffs();

  const std::int64_t rounds = params.rounds;
  const std::int64_t batches = std::min<std::int64_t>(100, rounds / 10);
  const std::int64_t batch_len = batches >= 2 ? rounds / batches : rounds;

  SimulatedMatch out;
  if (params.record_trace) out.trace.reserve(static_cast<std::size_t>(rounds));

  auto act = [&](double coop_prob) {
    bool defect = !rng.bernoulli(coop_prob);
    if (eps > 0 && rng.bernoulli(eps)) defect = !defect;
    return defect;
  };

  double sum_x = 0, sum_y = 0;
  double batch_x = 0, batch_y = 0;
  std::vector<double> means_x, means_y;
  std::int64_t in_batch = 0;
  int s = -1;
  for (std::int64_t t = 0; t < rounds; ++t) {
    const bool xd = act(s < 0 ? x.initial : x.coop(s));
    const bool yd = act(s < 0 ? y.initial : y.coop(swap_perspective(s)));
    s = joint_state(xd, yd);
    if (params.record_trace) out.trace.push_back(static_cast<std::uint8_t>(s));
    sum_x += fx(s);
    sum_y += fy(s);
    batch_x += fx(s);
    batch_y += fy(s);
    if (++in_batch == batch_len && batches >= 2 &&
        static_cast<std::int64_t>(means_x.size()) < batches) {
      means_x.push_back(batch_x / batch_len);
      means_y.push_back(batch_y / batch_len);
      batch_x = batch_y = 0;
      in_batch = 0;
    }
  }

  auto batch_stderr = [](const std::vector<double>& m) {
    if (m.size() < 2) return 0.0;
    double mean = 0;
    for (double v : m) mean += v;
    mean /= static_cast<double>(m.size());
    double ss = 0;
    for (double v : m) ss += (v - mean) * (v - mean);
    const double k = static_cast<double>(m.size());
    return std::sqrt(ss / (k - 1) / k);
  };

  out.payoffs = {sum_x / static_cast<double>(rounds), sum_y / static_cast<double>(rounds),
                 PayoffMethod::Simulated, batch_stderr(means_x), batch_stderr(means_y)};
  return out;
}

}  // namespace dilemma
