#ifndef DILEMMA_TESTS_SUPPORT_HPP
#define DILEMMA_TESTS_SUPPORT_HPP

#include <random>

#include "dilemma/strategy.hpp"

namespace testing_support {

// Strategies with every probability strictly inside (0, 1), so every pair
// gives an ergodic chain.
inline dilemma::MemoryOneStrategy random_mixed(std::mt19937_64& gen, const std::string& name = "R") {
  std::uniform_real_distribution<double> u(0.05, 0.95);
  Eigen::Vector4d p(u(gen), u(gen), u(gen), u(gen));
  return dilemma::make_memory_one(name, p, u(gen));
}

// Independent stationary oracle: iterate v <- vM until it stops moving.
inline Eigen::RowVector4d power_iteration(const Eigen::Matrix4d& m) {
  Eigen::RowVector4d v = Eigen::RowVector4d::Constant(0.25);
  for (int k = 0; k < 200000; ++k) {
    const Eigen::RowVector4d next = v * m;
    const double change = (next - v).cwiseAbs().maxCoeff();
    v = next;
    if (change < 1e-16) break;
  }
  return v / v.sum();
}

// Transition matrix built directly from the move probabilities, without the
// library's helpers. Y sees CD and DC swapped.
inline Eigen::Matrix4d oracle_transition(const dilemma::MemoryOneStrategy& x,
                                         const dilemma::MemoryOneStrategy& y) {
  const int swap[4] = {0, 2, 1, 3};
  Eigen::Matrix4d m;
  for (int s = 0; s < 4; ++s) {
    const double px = x.coop(s), py = y.coop(swap[s]);
    m.row(s) << px * py, px * (1 - py), (1 - px) * py, (1 - px) * (1 - py);
  }
  return m;
}

inline std::pair<double, double> oracle_payoffs(const dilemma::MemoryOneStrategy& x,
                                                const dilemma::MemoryOneStrategy& y,
                                                const dilemma::Game2x2& g) {
  const Eigen::RowVector4d v = power_iteration(oracle_transition(x, y));
  const Eigen::Vector4d sx(g.R(), g.S(), g.T(), g.P());
  const Eigen::Vector4d sy(g.R(), g.T(), g.S(), g.P());
  return {v * sx, v * sy};
}

}  // namespace testing_support

#endif
