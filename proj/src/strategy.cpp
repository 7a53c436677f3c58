#include "dilemma/strategy.hpp"

#include <algorithm>
#include <cmath>

#include "dilemma/errors.hpp"

namespace dilemma {

MemoryOneStrategy make_memory_one(std::string name, const Eigen::Vector4d& coop, double initial) {
  MemoryOneStrategy s{std::move(name), coop, initial};
  if (!s.valid()) {
    throw std::invalid_argument("strategy '" + s.name + "' has probabilities outside [0, 1]");
  }
  return s;
}

const std::vector<std::string>& classic_names() {
  static const std::vector<std::string> names{"TFT", "GTFT", "WSLS", "AllC",
                                              "AllD", "Grim", "Random"};
  return names;
}

double gtft_generosity(const Game2x2& g) {
  return std::min(1.0 - (g.T() - g.R()) / (g.R() - g.S()), (g.R() - g.P()) / (g.T() - g.P()));
}

MemoryOneStrategy classic(std::string_view name, const Game2x2& game) {
  const std::string n(name);
  if (name == "TFT") return {n, {1, 0, 1, 0}, 1};
  if (name == "GTFT") {
    const double g = std::clamp(gtft_generosity(game), 0.0, 1.0);
    return {n, {1, g, 1, g}, 1};
  }
  if (name == "WSLS") return {n, {1, 0, 0, 1}, 1};
  if (name == "AllC") return {n, {1, 1, 1, 1}, 1};
  if (name == "AllD") return {n, {0, 0, 0, 0}, 0};
  if (name == "Grim") return {n, {1, 0, 0, 0}, 1};
  if (name == "Random") return {n, {0.5, 0.5, 0.5, 0.5}, 0.5};
  throw UnknownStrategy(n);
}

std::string_view to_string(ZdKind k) {
  switch (k) {
    case ZdKind::Extortionate: return "extortionate";
    case ZdKind::Generous: return "generous";
    case ZdKind::Equalizer: return "equalizer";
  }
  return "extortionate";
}

ZdKind zd_kind_from_string(std::string_view s) {
  for (auto k : {ZdKind::Extortionate, ZdKind::Generous, ZdKind::Equalizer}) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown ZD kind: " + std::string(s));
}

double zd_baseline(const Game2x2& game, const ZdSpec& spec) {
  switch (spec.kind) {
    case ZdKind::Extortionate: return game.P();
    case ZdKind::Generous: return game.R();
    case ZdKind::Equalizer: return spec.target;
  }
  return game.P();
}

Eigen::Vector4d zd_direction(const Game2x2& game, ZdKind kind, double l, double chi) {
  const Eigen::Vector4d ones = Eigen::Vector4d::Ones();
  const Eigen::Vector4d focal = game.focal_payoffs();
  const Eigen::Vector4d other = game.opponent_payoffs();
  if (kind == ZdKind::Equalizer) return l * ones - other;
  return (focal - l * ones) - chi * (other - l * ones);
}

namespace {
const Eigen::Vector4d kRepeat{1, 1, 0, 0};
}

double max_phi(const Game2x2& game, ZdKind kind, double l, double chi) {
  return max_step_in_unit_box(kRepeat, zd_direction(game, kind, l, chi));
}

MemoryOneStrategy compile_zd(const Game2x2& game, const ZdSpec& spec, std::string name) {
  if (!game.symmetric()) throw Infeasible("ZD compilation needs a symmetric game");
  if (spec.kind != ZdKind::Equalizer && !(spec.chi >= 1.0)) {
    throw Infeasible("ZD factor chi must be at least 1");
  }
  if (spec.kind == ZdKind::Equalizer) {
    const double lo = game.P(), hi = game.R();
    if (!(spec.target >= lo && spec.target <= hi)) {
      throw Infeasible("equalizer target outside [P, R]");
    }
  }
  const double l = zd_baseline(game, spec);
  const double limit = max_phi(game, spec.kind, l, spec.chi);
  if (limit <= 0) throw Infeasible("no positive scale gives valid probabilities");

  double phi = spec.phi.value;
  if (spec.phi.mode == PhiSpec::Mode::FractionOfMax) {
    if (!(spec.phi.value > 0 && spec.phi.value <= 1)) {
      throw Infeasible("phi fraction of max must lie in (0, 1]");
    }
    phi = spec.phi.value * limit;
  } else if (!(phi > 0 && phi <= limit)) {
    throw Infeasible("phi outside (0, max_phi]");
  }

  Eigen::Vector4d p = kRepeat + phi * zd_direction(game, spec.kind, l, spec.chi);
  // Only rounding can push an entry past the box at phi == limit.
  p = p.cwiseMax(0.0).cwiseMin(1.0);
  if (name.empty()) {
    name = std::string(to_string(spec.kind)) + "-" + std::to_string(spec.chi);
  }
  return {std::move(name), p, 1.0};
}

MemoryOneStrategy extort2(const Game2x2& game) {
  return compile_zd(game, {ZdKind::Extortionate, 2.0, PhiSpec::fraction_of_max(0.5)}, "Extort-2");
}

MemoryOneStrategy zdgtft2(const Game2x2& game) {
  return compile_zd(game, {ZdKind::Generous, 2.0, PhiSpec::fraction_of_max(0.5)}, "ZDGTFT-2");
}

PayoffInterval enforceable_opponent_range(const Game2x2& g) {
  return {std::max(g.S(), g.P()), std::min(g.R(), g.T())};
}

}  // namespace dilemma
