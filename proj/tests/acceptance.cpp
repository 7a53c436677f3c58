// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <thread>

#include "support.hpp"

#include "dilemma/config.hpp"
#include "dilemma/lattice.hpp"
#include "dilemma/markov.hpp"
#include "dilemma/match.hpp"
#include "dilemma/parallel.hpp"
#include "dilemma/population.hpp"
#include "dilemma/report.hpp"
#include "dilemma/tournament.hpp"

using namespace dilemma;
using testing_support::random_mixed;

namespace {

int threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

template <typename Fn>
void criterion(int id, const char* title, double budget_s, Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = fn();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs > budget_s) {
    v.pass = false;
    v.detail += "; over time budget";
  }
  if (!v.pass) ++failures;
  std::printf("[%s] criterion %2d  %-34s %s (%.2fs)\n", v.pass ? "PASS" : "FAIL", id, title, v.detail.c_str(),
              secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::vector<MemoryOneStrategy> opponents(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<MemoryOneStrategy> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(random_mixed(gen, "q" + std::to_string(k)));
  return out;
}

Verdict relation_check(const MemoryOneStrategy& x, double l, double chi) {
  const Game2x2 pd = prisoners_dilemma();
  double worst = 0;
  for (const auto& y : opponents(1000, 1)) {
    const auto p = exact_payoffs(x, y, pd);
    worst = std::max(worst, std::abs((p.s_x - l) - chi * (p.s_y - l)));
  }
  return {worst <= 1e-10, fmt("max residual %.3g over 1000 opponents", worst)};
}

std::vector<std::string> names_of(const std::vector<MemoryOneStrategy>& r) {
  std::vector<std::string> out;
  for (const auto& s : r) out.push_back(s.name);
  return out;
}

}  // namespace

int main() {
  const Game2x2 pd = prisoners_dilemma();

  criterion(1, "Extort-2 linear relation", 5, [&] { return relation_check(extort2(pd), pd.P(), 2.0); });
  criterion(2, "ZDGTFT-2 linear relation", 5, [&] { return relation_check(zdgtft2(pd), pd.R(), 2.0); });

  criterion(3, "equalizer pins opponent payoff", 5, [&] {
    double worst = 0;
    const auto ys = opponents(100, 3);
    for (double target : {1.5, 2.0, 2.5}) {
      const auto x = compile_zd(pd, {ZdKind::Equalizer, 1.0, PhiSpec::fraction_of_max(0.5), target}, "eq");
      for (const auto& y : ys) worst = std::max(worst, std::abs(exact_payoffs(x, y, pd).s_y - target));
    }
    return Verdict{worst <= 1e-10, fmt("max |s_y - target| %.3g", worst)};
  });

  criterion(4, "extortion / generosity dominance", 5, [&] {
    int ext_bad = 0, gen_bad = 0;
    const auto e = extort2(pd), g = zdgtft2(pd);
    for (const auto& y : opponents(1000, 4)) {
      const auto a = exact_payoffs(e, y, pd);
      const auto b = exact_payoffs(g, y, pd);
      if (a.s_x < a.s_y - 1e-12) ++ext_bad;
      if (b.s_x > b.s_y + 1e-12) ++gen_bad;
    }
    return Verdict{ext_bad == 0 && gen_bad == 0, "violations: Extort-2 " + std::to_string(ext_bad) +
                                                     ", ZDGTFT-2 " + std::to_string(gen_bad)};
  });

  criterion(5, "simulation vs exact oracle", 0, [&] {
    const auto xs = opponents(50, 50), ys = opponents(50, 51);
    std::vector<char> agree(50, 0);
    std::vector<double> gap(50, 0);
    parallel_for(50, threads(), [&](std::size_t k) {
      MatchParams mp;
      mp.rounds = 1000000;
      mp.seed = derive_seed(kDefaultSeed, 5, k);
      const auto sim = simulate_match(xs[k], ys[k], pd, mp).payoffs;
      const auto ex = exact_payoffs(xs[k], ys[k], pd);
      agree[k] = std::abs(sim.s_x - ex.s_x) <= 3 * sim.stderr_x && std::abs(sim.s_y - ex.s_y) <= 3 * sim.stderr_y;
      const Eigen::Matrix4d m = transition_matrix(xs[k], ys[k]);
      const Eigen::Vector4d v = stationary_distribution(m);
      gap[k] = (v.transpose() - testing_support::power_iteration(m)).cwiseAbs().maxCoeff();
    });
    const long ok = std::count(agree.begin(), agree.end(), 1);
    const double worst = *std::max_element(gap.begin(), gap.end());
    return Verdict{ok >= 48 && worst <= 1e-10,
                   std::to_string(ok) + "/50 within 3 SE; power-iteration gap " + fmt("%.3g", worst)};
  });

  criterion(6, "tournament caption facts", 60, [&] {
    int hits = 0;
    std::string last;
    for (int seed = 0; seed < 20; ++seed) {
      TournamentConfig c;
      c.roster = figure3_roster(pd);
      c.game = pd;
      c.match.noise_eps = 0.05;
      c.match.seed = static_cast<std::uint64_t>(seed);
      c.threads = threads();
      const auto r = round_robin(c);
      const int g = r.index_of("ZDGTFT-2"), d = r.index_of("AllD");
      const int n = static_cast<int>(r.names.size());
      bool g_top = true, d_bottom = true, d_most_wins = true;
      for (int i = 0; i < n; ++i) {
        if (i != g && r.total(i) >= r.total(g)) g_top = false;
        if (i != d && r.total(i) <= r.total(d)) d_bottom = false;
        if (r.wins[i] > r.wins[d]) d_most_wins = false;
      }
      if (g_top && r.wins[g] == 0 && d_most_wins && d_bottom) ++hits;
      last = "top " + r.names[r.rank.front()] + ", bottom " + r.names[r.rank.back()] + ", ZDGTFT-2 rank " +
             std::to_string(std::find(r.rank.begin(), r.rank.end(), g) - r.rank.begin() + 1) + " with " +
             std::to_string(r.wins[g]) + " wins, AllD rank " +
             std::to_string(std::find(r.rank.begin(), r.rank.end(), d) - r.rank.begin() + 1) + " with " +
             std::to_string(r.wins[d]) + " wins";
    }
    return Verdict{hits >= 18, std::to_string(hits) + "/20 seeds; " + last};
  });

  criterion(7, "one-shot analysis", 5, [&] {
    bool ok = true;
    const auto pn = pure_nash_equilibria(pd);
    ok &= strict_dominant_strategy(pd, Player::Row) == 1 && strict_dominant_strategy(pd, Player::Col) == 1;
    ok &= pn.size() == 1 && pn[0].row == 1 && pn[0].col == 1;
    const Game2x2 dc = due_care_game();
    const auto dn = pure_nash_equilibria(dc);
    ok &= strict_dominant_strategy(dc, Player::Col) == 0 && !strict_dominant_strategy(dc, Player::Row);
    ok &= dc.action_label(Player::Col, 0) == "NoCare";
    ok &= dn.size() == 1 && dn[0].row == 0 && dn[0].col == 0;
    const auto cn = pure_nash_equilibria(chicken());
    ok &= cn.size() == 2 && cn[0].row == 0 && cn[0].col == 1 && cn[1].row == 1 && cn[1].col == 0;
    ok &= travelers_nash(TravelersDilemma{2, 100, 2}) == std::pair{2, 2};
    return Verdict{ok, "PD (D,D); due care (NoCare,NoCare); chicken {(C,D),(D,C)}; travelers (2,2)"};
  });

  criterion(8, "enforceable payoff range", 0, [&] {
    const auto a = enforceable_opponent_range(pd), b = enforceable_opponent_range(chicken());
    const bool ok = a.lo == 1 && a.hi == 3 && b.lo == 2 && b.hi == 3;
    return Verdict{ok, "PD [" + format_number(a.lo) + "," + format_number(a.hi) + "], chicken [" +
                           format_number(b.lo) + "," + format_number(b.hi) + "]"};
  });

  criterion(9, "evolutionary transience", 300, [&] {
    const std::vector<MemoryOneStrategy> roster = {classic("AllD"), extort2(pd), zdgtft2(pd)};
    const Eigen::MatrixXd a = payoff_matrix(roster, pd);
    const auto init = homogeneous(names_of(roster), 0, 100);
    std::vector<Trajectory> runs(20);
    parallel_for(runs.size(), threads(), [&](std::size_t s) {
      EvolutionParams p;
      p.selection_strength = 1;
      p.mutation_rate = 0.01;
      p.generations = 100000;
      p.record_every = 100;
      p.seed = derive_seed(kDefaultSeed, 9, s);
      runs[s] = evolve_trajectory(init, p, a);
    });
    int tail_ok = 0, peak_ok = 0;
    const std::size_t len = runs[0].steps.size();
    std::vector<double> mean_e(len, 0), mean_g(len, 0);
    for (const auto& t : runs) {
      double e = 0, g = 0;
      const std::size_t from = len * 3 / 4;
      for (std::size_t k = from; k < len; ++k) {
        e += static_cast<double>(t.counts[k][1]);
        g += static_cast<double>(t.counts[k][2]);
      }
      if (g > e) ++tail_ok;
      std::size_t pe = 0, pg = 0;
      for (std::size_t k = 0; k < len; ++k) {
        if (t.counts[k][1] > t.counts[pe][1]) pe = k;
        if (t.counts[k][2] > t.counts[pg][2]) pg = k;
        mean_e[k] += static_cast<double>(t.counts[k][1]) / 20;
        mean_g[k] += static_cast<double>(t.counts[k][2]) / 20;
      }
      if (pe < pg) ++peak_ok;
    }
    const auto ens_pe = std::max_element(mean_e.begin(), mean_e.end()) - mean_e.begin();
    const auto ens_pg = std::max_element(mean_g.begin(), mean_g.end()) - mean_g.begin();
    const bool ok = tail_ok > 10 && peak_ok > 10;
    return Verdict{ok, "final quartile ZDGTFT-2 > Extort-2 in " + std::to_string(tail_ok) +
                           "/20, Extort-2 peaks first in " + std::to_string(peak_ok) +
                           "/20; ensemble peaks at steps " + std::to_string(runs[0].steps[ens_pe]) + " and " +
                           std::to_string(runs[0].steps[ens_pg])};
  });

  criterion(10, "fixation probabilities", 0, [&] {
    bool neutral = true;
    for (std::int64_t n : {2, 10, 100}) {
      neutral &= fixation_probability(Eigen::Matrix2d::Constant(1.7), n, 1.0) == 1.0 / static_cast<double>(n);
    }
    std::mt19937_64 gen(10);
    std::uniform_int_distribution<int> size(2, 100);
    int agree = 0;
    double worst_z = 0;
    for (int k = 0; k < 10; ++k) {
      const auto inv = random_mixed(gen, "i"), res = random_mixed(gen, "r");
      const Eigen::Matrix2d a = payoff_matrix({inv, res}, pd);
      const std::int64_t n = size(gen);
      EvolutionParams p;
      p.selection_strength = 1;
      p.seed = derive_seed(kDefaultSeed, 10, static_cast<std::uint64_t>(k));
      const double rho = fixation_probability(a, n, 1.0);
      const auto mc = fixation_monte_carlo(a, n, p, 10000, threads());
      const double sigma = std::sqrt(rho * (1 - rho) / static_cast<double>(mc.runs));
      const double z = sigma > 0 ? std::abs(mc.probability - rho) / sigma : 0;
      worst_z = std::max(worst_z, z);
      if (z <= 3) ++agree;
    }
    return Verdict{neutral && agree == 10, std::string("neutral 1/N ") + (neutral ? "exact" : "wrong") + "; " +
                                               std::to_string(agree) + "/10 pairs within 3 sigma (max z " +
                                               fmt("%.2f", worst_z) + ")"};
  });

  criterion(11, "lattice cooperation clusters", 300, [&] {
    const Game2x2 g = snowdrift(1.0, 0.2);
    const std::vector<MemoryOneStrategy> roster = {
        compile_zd(g, {ZdKind::Generous, 2.0, PhiSpec::fraction_of_max(0.5)}, "sZD"), classic("AllD")};
    const Eigen::MatrixXd a = payoff_matrix(roster, g);
    std::vector<char> ok(10, 0);
    std::vector<double> coop(10), cluster(10);
    parallel_for(10, threads(), [&](std::size_t s) {
      const std::uint64_t seed = derive_seed(kDefaultSeed, 11, s);
      LatticeParams p;
      p.epochs = 1000;
      p.seed = seed;
      const auto run = lattice_simulate(random_lattice(100, 0.5, seed), a, {1, 0}, p);
      const auto& f = run.metrics.front();
      const auto& l = run.metrics.back();
      coop[s] = l.cooperator_fraction;
      cluster[s] = l.largest_cluster;
      ok[s] = l.cooperator_fraction > f.cooperator_fraction && l.largest_cluster > f.largest_cluster;
    });
    const long hits = std::count(ok.begin(), ok.end(), 1);
    return Verdict{hits >= 7, std::to_string(hits) + "/10 seeds; min final cooperation " +
                                  fmt("%.3f", *std::min_element(coop.begin(), coop.end())) +
                                  ", min final largest cluster " +
                                  fmt("%.3f", *std::min_element(cluster.begin(), cluster.end()))};
  });

  criterion(12, "determinism across thread counts", 0, [&] {
    const std::vector<std::string> configs = {
        R"({"command": "analyze"})",
        R"({"command": "match", "roster": "figure3", "match": {"x": "Extort-2", "y": "Random", "rounds": 50000, "noise": 0.01}})",
        R"({"command": "tournament", "tournament": {"scoring": "simulated", "noise": 0.05, "replicates": 20}})",
        R"({"command": "tournament", "tournament": {"noise": 0.05}})",
        R"({"command": "evolve", "evolve": {"steps": 20000, "replicates": 8}})",
        R"({"command": "coevolve", "coevolve": {"steps": 20000, "replicates": 4, "delta": 0.2, "drift": 0.05}})",
        R"({"command": "lattice", "lattice": {"side": 24, "epochs": 20, "replicates": 4, "snapshots": [0, 20]}})",
        R"({"command": "region-scan"})",
    };
    int same = 0;
    for (const auto& text : configs) {
      const auto c = parse_config_text(text);
      const auto a = execute(c, 1), b = execute(c, 1), m = execute(c, threads() + 3);
      bool eq = a.files.size() == b.files.size() && a.files.size() == m.files.size();
      for (std::size_t k = 0; eq && k < a.files.size(); ++k) {
        eq = a.files[k].content == b.files[k].content && a.files[k].content == m.files[k].content;
      }
      same += eq;
    }
    return Verdict{same == static_cast<int>(configs.size()),
                   std::to_string(same) + "/" + std::to_string(configs.size()) + " commands byte-identical"};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
