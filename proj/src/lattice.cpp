#include "dilemma/lattice.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "dilemma/population.hpp"

namespace dilemma {

std::string_view to_string(Neighborhood n) {
  return n == Neighborhood::Moore8 ? "moore" : "von_neumann";
}

std::string_view to_string(UpdateRule u) {
  return u == UpdateRule::Synchronous ? "sync" : "async";
}

Neighborhood neighborhood_from_string(std::string_view s) {
  if (s == "von_neumann") return Neighborhood::VonNeumann4;
  if (s == "moore") return Neighborhood::Moore8;
  throw std::invalid_argument("unknown neighborhood: " + std::string(s));
}

UpdateRule update_rule_from_string(std::string_view s) {
  if (s == "async") return UpdateRule::Asynchronous;
  if (s == "sync") return UpdateRule::Synchronous;
  throw std::invalid_argument("unknown update rule: " + std::string(s));
}

std::size_t LatticeState::index(int r, int c) const {
  r = ((r % side) + side) % side;
  c = ((c % side) + side) % side;
  return static_cast<std::size_t>(r) * side + c;
}

LatticeState random_lattice(int side, double fraction, std::uint64_t seed, Neighborhood nb,
                            UpdateRule update) {
  if (side < 1) throw std::invalid_argument("lattice side must be positive");
  CounterRng rng(derive_seed(seed, 0x1A77));
  LatticeState l{side, std::vector<std::uint16_t>(std::size_t(side) * side), nb, update};
  for (auto& s : l.sites) s = rng.bernoulli(fraction) ? 0 : 1;
  return l;
}

namespace {

constexpr std::array<std::array<int, 2>, 8> kOffsets{
    {{-1, 0}, {1, 0}, {0, -1}, {0, 1}, {-1, -1}, {-1, 1}, {1, -1}, {1, 1}}};

int degree(Neighborhood nb) { return nb == Neighborhood::Moore8 ? 8 : 4; }

std::size_t neighbor(const LatticeState& l, std::size_t site, int k) {
  const int r = static_cast<int>(site) / l.side, c = static_cast<int>(site) % l.side;
  return l.index(r + kOffsets[k][0], c + kOffsets[k][1]);
}

}  // namespace

double site_payoff(const LatticeState& l, std::size_t site, const Eigen::MatrixXd& a) {
  double sum = 0;
  const int deg = degree(l.neighborhood);
  for (int k = 0; k < deg; ++k) sum += a(l.sites[site], l.sites[neighbor(l, site, k)]);
  return sum;
}

double cooperator_fraction(const LatticeState& l, const std::vector<char>& coop) {
  const auto n = std::count_if(l.sites.begin(), l.sites.end(), [&](auto s) { return coop[s]; });
  return static_cast<double>(n) / static_cast<double>(l.sites.size());
}

double largest_cluster_fraction(const LatticeState& l, const std::vector<char>& coop) {
  const std::size_t n = l.sites.size();
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack;
  std::size_t best = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start] || !coop[l.sites[start]]) continue;
    std::size_t size = 0;
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t s = stack.back();
      stack.pop_back();
      ++size;
      for (int k = 0; k < 4; ++k) {
        const std::size_t t = neighbor(l, s, k);
        if (!seen[t] && coop[l.sites[t]]) {
          seen[t] = 1;
          stack.push_back(t);
        }
      }
    }
    best = std::max(best, size);
  }
  return static_cast<double>(best) / static_cast<double>(n);
}

LatticeRun lattice_simulate(const LatticeState& lattice, const Eigen::MatrixXd& a,
                            const std::vector<char>& coop, const LatticeParams& params) {
  if (lattice.side < 1 || lattice.sites.size() != std::size_t(lattice.side) * lattice.side) {
    throw std::invalid_argument("lattice has the wrong number of sites");
  }
  const auto kinds = static_cast<std::uint16_t>(a.rows());
  for (auto s : lattice.sites) {
    if (s >= kinds) throw std::invalid_argument("lattice site holds an unknown strategy");
  }
  if (coop.size() != static_cast<std::size_t>(kinds)) {
    throw std::invalid_argument("cooperator mask must cover the roster");
  }

  CounterRng rng(derive_seed(params.seed, 0x1A78));
  LatticeState l = lattice;
  const std::size_t n = l.sites.size();
  const int deg = degree(l.neighborhood);
  const double beta = params.selection_strength;
  const double mu = params.mutation_rate;

  LatticeRun run;
  auto wants_snapshot = [&](std::int64_t e) {
    return std::find(params.snapshot_epochs.begin(), params.snapshot_epochs.end(), e) !=
           params.snapshot_epochs.end();
  };
  auto record = [&](std::int64_t e) {
    run.metrics.push_back({e, cooperator_fraction(l, coop), largest_cluster_fraction(l, coop)});
    if (wants_snapshot(e)) run.snapshots.emplace_back(e, l);
  };
  record(0);

  std::vector<std::uint16_t> next;
  for (std::int64_t epoch = 1; epoch <= params.epochs; ++epoch) {
    if (l.update == UpdateRule::Asynchronous) {
      for (std::size_t u = 0; u < n; ++u) {
        const std::size_t x = rng.below(n);
        if (mu > 0 && rng.bernoulli(mu)) {
          l.sites[x] = static_cast<std::uint16_t>(rng.below(kinds));
          continue;
        }
        const std::size_t y = neighbor(l, x, static_cast<int>(rng.below(deg)));
        if (l.sites[x] == l.sites[y]) continue;
        const double diff = site_payoff(l, y, a) - site_payoff(l, x, a);
        if (rng.bernoulli(fermi_probability(beta, diff))) l.sites[x] = l.sites[y];
      }
    } else {
      std::vector<double> pay(n);
      for (std::size_t s = 0; s < n; ++s) pay[s] = site_payoff(l, s, a);
      next = l.sites;
      for (std::size_t x = 0; x < n; ++x) {
        if (mu > 0 && rng.bernoulli(mu)) {
          next[x] = static_cast<std::uint16_t>(rng.below(kinds));
          continue;
        }
        const std::size_t y = neighbor(l, x, static_cast<int>(rng.below(deg)));
        if (l.sites[x] == l.sites[y]) continue;
        if (rng.bernoulli(fermi_probability(beta, pay[y] - pay[x]))) next[x] = l.sites[y];
      }
      l.sites.swap(next);
    }
    record(epoch);
  }
  run.final_state = std::move(l);
  return run;
}

}  // namespace dilemma
