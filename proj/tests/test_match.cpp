#include <random>

#include "doctest.h"
#include "support.hpp"

#include "dilemma/errors.hpp"
#include "dilemma/markov.hpp"
#include "dilemma/match.hpp"

using namespace dilemma;
using testing_support::random_mixed;

namespace {

// Plain per-round replay of two deterministic strategies.
std::pair<double, double> replay_average(const MemoryOneStrategy& x, const MemoryOneStrategy& y,
                                         const Game2x2& g, int rounds) {
  int a = x.initial == 1 ? 0 : 1, b = y.initial == 1 ? 0 : 1;  // 0 = C
  double sx = 0, sy = 0;
  for (int t = 0; t < rounds; ++t) {
    sx += g.row(a, b);
    sy += g.col(a, b);
    const int sxs = 2 * a + b, sys = 2 * b + a;
    a = x.coop(sxs) == 1 ? 0 : 1;
    b = y.coop(sys) == 1 ? 0 : 1;
  }
  return {sx / rounds, sy / rounds};
}

}  // namespace

TEST_CASE("exact payoff examples") {
  const Game2x2 pd = prisoners_dilemma();
  const auto p = exact_payoffs(classic("AllD"), classic("AllC"), pd);
  CHECK(p.s_x == doctest::Approx(5));
  CHECK(p.s_y == doctest::Approx(0));
  CHECK(p.method == PayoffMethod::Stationary);
  CHECK_THROWS_AS(exact_payoffs(classic("TFT"), classic("TFT"), pd), NotErgodic);
}

TEST_CASE("cycle payoffs") {
  const Game2x2 pd = prisoners_dilemma();
  auto tt = cycle_payoffs(classic("TFT"), classic("TFT"), pd);
  CHECK(tt.s_x == 3);
  CHECK(tt.s_y == 3);
  CHECK(tt.method == PayoffMethod::Cycle);
  auto td = cycle_payoffs(classic("TFT"), classic("AllD"), pd);
  CHECK(td.s_x == 1);
  CHECK(td.s_y == 1);
  auto wd = cycle_payoffs(classic("WSLS"), classic("AllD"), pd);
  CHECK(wd.s_x == doctest::Approx(0.5));
  CHECK(wd.s_y == doctest::Approx(3));
  CHECK_THROWS(cycle_payoffs(classic("Random"), classic("TFT"), pd));
}

TEST_CASE("cycle payoffs equal a long noiseless replay for every deterministic catalog pair") {
  const Game2x2 pd = prisoners_dilemma();
  const std::vector<std::string> det = {"TFT", "WSLS", "AllC", "AllD", "Grim"};
  std::vector<MemoryOneStrategy> extra = {
      make_memory_one("Alt", Eigen::Vector4d(0, 0, 1, 1), 1),
      make_memory_one("Sus", Eigen::Vector4d(1, 0, 1, 0), 0),
  };
  std::vector<MemoryOneStrategy> all;
  for (const auto& n : det) all.push_back(classic(n));
  all.insert(all.end(), extra.begin(), extra.end());
  const int rounds = 100000;
  for (const auto& x : all) {
    for (const auto& y : all) {
      const auto c = cycle_payoffs(x, y, pd);
      const auto [rx, ry] = replay_average(x, y, pd, rounds);
      // The transient is at most four rounds; the cycle length divides 12.
      CHECK(c.s_x == doctest::Approx(rx).epsilon(1e-4));
      CHECK(c.s_y == doctest::Approx(ry).epsilon(1e-4));
      MatchParams mp;
      mp.rounds = 120000;
      const auto sim = simulate_match(x, y, pd, mp).payoffs;
      const auto [lx, ly] = replay_average(x, y, pd, 120000);
      CHECK(sim.s_x == lx);
      CHECK(sim.s_y == ly);
      // Long-run distribution agrees with the cycle.
      const auto lr = long_run_payoffs(x, y, pd);
      CHECK(lr.s_x == doctest::Approx(c.s_x).epsilon(1e-12));
      CHECK(lr.s_y == doctest::Approx(c.s_y).epsilon(1e-12));
    }
  }
}

TEST_CASE("exact payoffs do not depend on the initial move for mixed pairs") {
  const Game2x2 pd = prisoners_dilemma();
  std::mt19937_64 gen(31);
  for (int k = 0; k < 100; ++k) {
    auto x = random_mixed(gen), y = random_mixed(gen);
    const auto a = exact_payoffs(x, y, pd);
    x.initial = 0;
    y.initial = 1;
    const auto b = exact_payoffs(x, y, pd);
    CHECK(std::abs(a.s_x - b.s_x) < 1e-13);
    CHECK(std::abs(a.s_y - b.s_y) < 1e-13);
    const auto [ox, oy] = testing_support::oracle_payoffs(x, y, pd);
    CHECK(std::abs(a.s_x - ox) < 1e-10);
    CHECK(std::abs(a.s_y - oy) < 1e-10);
    CHECK(a.s_x >= pd.S());
    CHECK(a.s_x <= pd.T());
  }
}

TEST_CASE("simulation agrees with exact payoffs within three standard errors") {
  const Game2x2 pd = prisoners_dilemma();
  std::mt19937_64 gen(77);
  int agree = 0;
  const int pairs = 50;
  for (int k = 0; k < pairs; ++k) {
    const auto x = random_mixed(gen), y = random_mixed(gen);
    MatchParams mp;
    mp.rounds = 200000;
    mp.seed = 1000 + k;
    const auto sim = simulate_match(x, y, pd, mp).payoffs;
    const auto ex = exact_payoffs(x, y, pd);
    CHECK(sim.method == PayoffMethod::Simulated);
    CHECK(sim.stderr_x > 0);
    if (std::abs(sim.s_x - ex.s_x) <= 3 * sim.stderr_x && std::abs(sim.s_y - ex.s_y) <= 3 * sim.stderr_y)
      ++agree;
  }
  CHECK(agree >= 0.95 * pairs);
}

TEST_CASE("noisy simulation agrees with noise-folded exact payoffs") {
  const Game2x2 pd = prisoners_dilemma();
  const double eps = 0.05;
  const std::vector<std::string> names = {"TFT", "WSLS", "AllD", "Grim", "GTFT"};
  int agree = 0, total = 0;
  for (const auto& a : names) {
    for (const auto& b : names) {
      MatchParams mp;
      mp.rounds = 200000;
      mp.noise_eps = eps;
      mp.seed = static_cast<std::uint64_t>(total);
      const auto sim = simulate_match(classic(a), classic(b), pd, mp).payoffs;
      const auto ex = exact_payoffs(with_noise(classic(a), eps), with_noise(classic(b), eps), pd);
      ++total;
      if (std::abs(sim.s_x - ex.s_x) <= 3 * sim.stderr_x && std::abs(sim.s_y - ex.s_y) <= 3 * sim.stderr_y)
        ++agree;
    }
  }
  CHECK(agree >= 0.9 * total);
}

TEST_CASE("simulation examples") {
  const Game2x2 pd = prisoners_dilemma();
  MatchParams mp;
  mp.rounds = 1000;
  const auto cc = simulate_match(classic("AllC"), classic("AllC"), pd, mp).payoffs;
  CHECK(cc.s_x == 3);
  CHECK(cc.s_y == 3);

  mp.rounds = 100000;
  mp.noise_eps = 0.05;
  const auto tt = simulate_match(classic("TFT"), classic("TFT"), pd, mp).payoffs;
  CHECK(tt.s_x < 3);
  CHECK(tt.s_y < 3);
}

TEST_CASE("simulation is determined by the seed") {
  const Game2x2 pd = prisoners_dilemma();
  MatchParams mp;
  mp.rounds = 5000;
  mp.noise_eps = 0.1;
  mp.record_trace = true;
  const auto a = simulate_match(classic("Random"), classic("WSLS"), pd, mp);
  const auto b = simulate_match(classic("Random"), classic("WSLS"), pd, mp);
  CHECK(a.trace == b.trace);
  CHECK(a.trace.size() == 5000);
  CHECK(a.payoffs.s_x == b.payoffs.s_x);
  mp.seed += 1;
  const auto c = simulate_match(classic("Random"), classic("WSLS"), pd, mp);
  CHECK(c.trace != a.trace);
}

TEST_CASE("match parameters are validated") {
  MatchParams mp;
  mp.rounds = 0;
  CHECK_THROWS(validate(mp));
  mp.rounds = 1;
  mp.noise_eps = 0.6;
  CHECK_THROWS(validate(mp));
  mp.noise_eps = 0.5;
  CHECK_NOTHROW(validate(mp));
}
