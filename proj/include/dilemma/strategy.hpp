#ifndef DILEMMA_STRATEGY_HPP
#define DILEMMA_STRATEGY_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dilemma/game.hpp"

namespace dilemma {

/// Memory-one strategy for the iterated 2x2 game. `coop` holds the chance of
/// cooperating after each joint outcome (CC, CD, DC, DD), own move first.
template <typename Scalar>
struct MemoryOne {
  using Vector = Eigen::Matrix<Scalar, 4, 1>;

  std::string name;
  Vector coop = Vector::Zero();
  Scalar initial = Scalar(1);

  bool deterministic() const {
    auto binary = [](Scalar x) { return x == Scalar(0) || x == Scalar(1); };
    return binary(initial) && binary(coop(0)) && binary(coop(1)) && binary(coop(2)) &&
           binary(coop(3));
  }

  bool valid() const {
    return (coop.array() >= Scalar(0)).all() && (coop.array() <= Scalar(1)).all() &&
           initial >= Scalar(0) && initial <= Scalar(1);
  }

  bool operator==(const MemoryOne&) const = default;
};

using MemoryOneStrategy = MemoryOne<double>;

/// Checks that every probability is in [0, 1]; throws std::invalid_argument.
MemoryOneStrategy make_memory_one(std::string name, const Eigen::Vector4d& coop, double initial);

/// Execution noise folded into the strategy: each intended move flips with
/// probability eps.
template <typename Scalar>
MemoryOne<Scalar> with_noise(MemoryOne<Scalar> s, Scalar eps) {
  s.coop = ((Scalar(1) - eps) * s.coop.array() + eps * (Scalar(1) - s.coop.array())).matrix();
  s.initial = (Scalar(1) - eps) * s.initial + eps * (Scalar(1) - s.initial);
  return s;
}

const std::vector<std::string>& classic_names();

/// TFT, GTFT, WSLS, AllC, AllD, Grim, Random. GTFT's forgiveness depends on the
/// game; the other entries do not.
MemoryOneStrategy classic(std::string_view name, const Game2x2& game = prisoners_dilemma());

/// min(1 - (T-R)/(R-S), (R-P)/(T-P))
double gtft_generosity(const Game2x2& game);

enum class ZdKind { Extortionate, Generous, Equalizer };

std::string_view to_string(ZdKind k);
ZdKind zd_kind_from_string(std::string_view s);

/// Either an absolute scale or a fraction of the largest feasible one.
struct PhiSpec {
  enum class Mode { Absolute, FractionOfMax };
  Mode mode = Mode::FractionOfMax;
  double value = 0.5;

  static PhiSpec absolute(double v) { return {Mode::Absolute, v}; }
  static PhiSpec fraction_of_max(double f) { return {Mode::FractionOfMax, f}; }

  bool operator==(const PhiSpec&) const = default;
};

struct ZdSpec {
  ZdKind kind = ZdKind::Extortionate;
  double chi = 1.0;
  PhiSpec phi{};
  double target = 0.0;  // Equalizer only

  bool operator==(const ZdSpec&) const = default;
};

/// Payoff level the enforced relation pivots on: P for extortion, R for
/// generosity and the target for an equalizer.
double zd_baseline(const Game2x2& game, const ZdSpec& spec);

/// Direction d such that p = (1, 1, 0, 0) + phi * d. For the linear relations
///   d = (focal - l) - chi * (opponent - l)
/// and for an equalizer d = target - opponent.
Eigen::Vector4d zd_direction(const Game2x2& game, ZdKind kind, double baseline, double chi);

/// Largest t with base + t * direction inside [0, 1]^n. Zero when no positive
/// step is feasible or when the direction is null.
template <typename DerivedBase, typename DerivedDir>
double max_step_in_unit_box(const Eigen::MatrixBase<DerivedBase>& base,
                            const Eigen::MatrixBase<DerivedDir>& direction) {
  double bound = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < base.size(); ++i) {
    const double b = base(i);
    const double d = direction(i);
    if (d > 0) bound = std::min(bound, (1.0 - b) / d);
    else if (d < 0) bound = std::min(bound, -b / d);
  }
  if (!std::isfinite(bound) || bound <= 0) return 0.0;
  return bound;
}

/// Supremum of phi keeping all four probabilities in [0, 1]; 0 if infeasible.
double max_phi(const Game2x2& game, ZdKind kind, double baseline, double chi);

MemoryOneStrategy compile_zd(const Game2x2& game, const ZdSpec& spec, std::string name = {});

/// The two ZD strategies named after their slope-2 relations, at half the
/// maximal scale.
MemoryOneStrategy extort2(const Game2x2& game = prisoners_dilemma());
MemoryOneStrategy zdgtft2(const Game2x2& game = prisoners_dilemma());

struct PayoffInterval {
  double lo = 0;
  double hi = 0;
  bool empty() const { return lo > hi; }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

/// Opponent payoffs a memory-one player can pin: [max(S, P), min(R, T)].
PayoffInterval enforceable_opponent_range(const Game2x2& game);

}  // namespace dilemma

#endif  // DILEMMA_STRATEGY_HPP
