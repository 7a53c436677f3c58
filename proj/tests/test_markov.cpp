#include <random>

#include "doctest.h"
#include "support.hpp"

#include "dilemma/errors.hpp"
#include "dilemma/markov.hpp"

using namespace dilemma;
using testing_support::power_iteration;
using testing_support::random_mixed;

TEST_CASE("transition matrix examples") {
  const auto allc = classic("AllC");
  const Eigen::Matrix4d cc = transition_matrix(allc, allc);
  for (int s = 0; s < 4; ++s) CHECK(cc.row(s) == Eigen::RowVector4d(1, 0, 0, 0));

  const auto tft = classic("TFT");
  const Eigen::Matrix4d tt = transition_matrix(tft, tft);
  CHECK(tt(1, 2) == 1);  // CD -> DC
  CHECK(tt(2, 1) == 1);

  const auto rnd = classic("Random");
  CHECK(transition_matrix(rnd, rnd).isApprox(Eigen::Matrix4d::Constant(0.25)));
}

TEST_CASE("transition matrices are row-stochastic and match the oracle construction") {
  std::mt19937_64 gen(5);
  for (int k = 0; k < 500; ++k) {
    const auto x = random_mixed(gen), y = random_mixed(gen);
    const Eigen::Matrix4d m = transition_matrix(x, y);
    for (int s = 0; s < 4; ++s) CHECK(std::abs(m.row(s).sum() - 1) <= 1e-12);
    CHECK((m - testing_support::oracle_transition(x, y)).cwiseAbs().maxCoeff() == 0);
  }
}

TEST_CASE("stationary distribution matches power iteration") {
  std::mt19937_64 gen(17);
  for (int k = 0; k < 200; ++k) {
    const Eigen::Matrix4d m = transition_matrix(random_mixed(gen), random_mixed(gen));
    const Eigen::Vector4d v = stationary_distribution(m);
    const Eigen::RowVector4d oracle = power_iteration(m);
    CHECK((v.transpose() - oracle).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((v.transpose() * m - v.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(v.sum() - 1) <= 1e-12);
    CHECK((v.array() >= 0).all());
  }
}

TEST_CASE("stationary examples") {
  const auto rnd = classic("Random");
  CHECK(stationary_distribution(transition_matrix(rnd, rnd)).isApprox(Eigen::Vector4d::Constant(0.25)));
  const Eigen::Vector4d cd = stationary_distribution(transition_matrix(classic("AllC"), classic("AllD")));
  CHECK(cd.isApprox(Eigen::Vector4d(0, 1, 0, 0)));
}

TEST_CASE("multiple closed classes raise NotErgodic") {
  const auto tft = classic("TFT");
  const Eigen::Matrix4d m = transition_matrix(tft, tft);
  CHECK_FALSE(has_unique_stationary(m));
  CHECK_THROWS_AS(stationary_distribution(m), NotErgodic);
  // CC and DD are absorbing; {CD, DC} alternate.
  CHECK(closed_classes(m).size() == 3);
}

TEST_CASE("long-run distribution from a start state") {
  const auto tft = classic("TFT");
  const Eigen::Matrix4d m = transition_matrix(tft, tft);
  CHECK(long_run_distribution(m, Eigen::Vector4d(1, 0, 0, 0)).isApprox(Eigen::Vector4d(1, 0, 0, 0)));
  CHECK(long_run_distribution(m, Eigen::Vector4d(0, 1, 0, 0)).isApprox(Eigen::Vector4d(0, 0.5, 0.5, 0)));
  // Mixed start splits mass between the classes it can reach.
  const Eigen::Vector4d v = long_run_distribution(m, Eigen::Vector4d(0.25, 0.25, 0.25, 0.25));
  CHECK(v.isApprox(Eigen::Vector4d(0.25, 0.25, 0.25, 0.25)));

  // Grim vs a generous mixer: transient states drain into DD.
  const auto grim = classic("Grim");
  const auto y = make_memory_one("y", Eigen::Vector4d(0.9, 0.5, 0.5, 0.5), 1);
  const Eigen::Matrix4d g = transition_matrix(grim, y);
  CHECK(long_run_distribution(g, Eigen::Vector4d(1, 0, 0, 0)).isApprox(Eigen::Vector4d(0, 0, 0.5, 0.5)));
}

TEST_CASE("chain functions are generic over the scalar type") {
  MemoryOne<long double> x{"x", {0.9L, 0.2L, 0.7L, 0.1L}, 1.0L};
  MemoryOne<long double> y{"y", {0.6L, 0.3L, 0.8L, 0.4L}, 1.0L};
  const auto m = transition_matrix(x, y);
  const auto v = stationary_distribution(m);
  const Eigen::Matrix<long double, 1, 4> residual = v.transpose() * m - v.transpose();
  CHECK(static_cast<double>(residual.cwiseAbs().maxCoeff()) < 1e-15);

  const MemoryOneStrategy xd{"x", {0.9, 0.2, 0.7, 0.1}, 1.0};
  const MemoryOneStrategy yd{"y", {0.6, 0.3, 0.8, 0.4}, 1.0};
  const Eigen::Vector4d vd = stationary_distribution(transition_matrix(xd, yd));
  for (int s = 0; s < 4; ++s) CHECK(vd(s) == doctest::Approx(static_cast<double>(v(s))).epsilon(1e-12));
}
