#include <random>

#include "doctest.h"
#include "support.hpp"

#include "dilemma/match.hpp"
#include "dilemma/tournament.hpp"

using namespace dilemma;

namespace {

TournamentConfig base_config(std::vector<MemoryOneStrategy> roster) {
  TournamentConfig c;
  c.roster = std::move(roster);
  c.game = prisoners_dilemma();
  return c;
}

}  // namespace

TEST_CASE("AllD beats AllC head to head") {
  const auto r = round_robin(base_config({classic("AllC"), classic("AllD")}));
  const int c = r.index_of("AllC"), d = r.index_of("AllD");
  CHECK(r.payoff(d, c) == doctest::Approx(5));
  CHECK(r.payoff(c, d) == doctest::Approx(0));
  CHECK(r.outcome[d][c] == Outcome::Win);
  CHECK(r.outcome[c][d] == Outcome::Loss);
  CHECK(r.wins[d] == 1);
  CHECK(r.draws[d] == 1);  // self-play
}

TEST_CASE("pairwise table examples") {
  auto r = round_robin(base_config(figure3_roster()));
  const auto& t = pairwise_table(r);
  CHECK(t(r.index_of("TFT"), r.index_of("TFT")) == doctest::Approx(3));
  CHECK(t(r.index_of("AllD"), r.index_of("AllC")) == doctest::Approx(5));
  CHECK(t(r.index_of("AllC"), r.index_of("AllD")) == doctest::Approx(0));
  const int e = r.index_of("Extort-2");
  for (const char* q : {"Random", "GTFT"}) {
    const int j = r.index_of(q);
    CHECK(std::abs((t(e, j) - 1) - 2 * (t(j, e) - 1)) < 1e-10);
  }
}

TEST_CASE("tournament structural invariants") {
  for (double noise : {0.0, 0.05}) {
    for (bool self : {true, false}) {
      auto c = base_config(figure3_roster());
      c.match.noise_eps = noise;
      c.include_self_play = self;
      const auto r = round_robin(c);
      const int n = static_cast<int>(r.names.size());
      for (int i = 0; i < n; ++i) {
        CHECK(r.wins[i] + r.losses[i] + r.draws[i] == n - 1 + (self ? 1 : 0));
        double row = 0;
        for (int j = 0; j < n; ++j) {
          if (i == j && !self) {
            CHECK(std::isnan(r.payoff(i, j)));
            continue;
          }
          row += r.payoff(i, j);
          if (r.outcome[i][j] == Outcome::Win) CHECK(r.outcome[j][i] == Outcome::Loss);
          if (r.outcome[i][j] == Outcome::Draw) CHECK(r.outcome[j][i] == Outcome::Draw);
        }
        CHECK(std::abs(row - r.total(i)) <= 1e-9);
      }
      for (int k = 0; k + 1 < n; ++k) {
        const double a = r.total(r.rank[k]), b = r.total(r.rank[k + 1]);
        CHECK(a >= b);
        if (a == b) CHECK(r.names[r.rank[k]] < r.names[r.rank[k + 1]]);
      }
    }
  }
}

TEST_CASE("ties in rank are broken by name") {
  auto c = base_config({make_memory_one("b", Eigen::Vector4d::Ones(), 1),
                        make_memory_one("a", Eigen::Vector4d::Ones(), 1)});
  const auto r = round_robin(c);
  CHECK(r.names[r.rank[0]] == "a");
}

TEST_CASE("Extort-2 never loses against mixed opponents") {
  std::mt19937_64 gen(8);
  std::vector<MemoryOneStrategy> roster = {extort2()};
  for (int k = 0; k < 30; ++k) roster.push_back(testing_support::random_mixed(gen, "q" + std::to_string(k)));
  const auto r = round_robin(base_config(roster));
  CHECK(r.losses[0] == 0);
}

TEST_CASE("simulated tournaments are reproducible and thread-independent") {
  auto c = base_config(figure3_roster());
  c.scoring = Scoring::Simulated;
  c.replicates = 5;
  c.match.rounds = 200;
  c.match.noise_eps = 0.05;
  c.threads = 1;
  const auto a = round_robin(c);
  c.threads = 4;
  const auto b = round_robin(c);
  CHECK(a.total == b.total);
  CHECK(a.total_sd == b.total_sd);
  CHECK(a.wins == b.wins);
  CHECK(a.rank == b.rank);
  CHECK(a.payoff == b.payoff);
  c.match.seed = 7;
  const auto d = round_robin(c);
  CHECK(d.total != a.total);
}

TEST_CASE("roster validation") {
  CHECK_THROWS(round_robin(base_config({classic("TFT")})));
  CHECK_THROWS(round_robin(base_config({classic("TFT"), classic("TFT")})));
}
