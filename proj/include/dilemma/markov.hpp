#ifndef DILEMMA_MARKOV_HPP
#define DILEMMA_MARKOV_HPP

// Joint Markov chain of two memory-one players and the long-run occupancy
// of its states. Joint states are ordered CC, CD, DC, DD from X's side.

#include <vector>

#include <Eigen/Dense>

#include "dilemma/errors.hpp"
#include "dilemma/strategy.hpp"

namespace dilemma {

template <typename Scalar>
using OutcomeDistribution = Eigen::Matrix<Scalar, 4, 1>;

/// Y sees the joint state with the roles swapped: CD for X is DC for Y.
constexpr int swap_perspective(int state) {
  return state == 1 ? 2 : (state == 2 ? 1 : state);
}

template <typename Scalar>
Eigen::Matrix<Scalar, 4, 4> transition_matrix(const MemoryOne<Scalar>& x, const MemoryOne<Scalar>& y) {
  Eigen::Matrix<Scalar, 4, 4> m;
  for (int s = 0; s < 4; ++s) {
    const Scalar a = x.coop(s);
    const Scalar b = y.coop(swap_perspective(s));
    m(s, 0) = a * b;
    m(s, 1) = a * (Scalar(1) - b);
    m(s, 2) = (Scalar(1) - a) * b;
    m(s, 3) = (Scalar(1) - a) * (Scalar(1) - b);
  }
  return m;
}

/// Distribution over the first joint move.
template <typename Scalar>
OutcomeDistribution<Scalar> initial_distribution(const MemoryOne<Scalar>& x, const MemoryOne<Scalar>& y) {
  const Scalar a = x.initial, b = y.initial;
  return {a * b, a * (Scalar(1) - b), (Scalar(1) - a) * b, (Scalar(1) - a) * (Scalar(1) - b)};
}

/// Closed communicating classes of the support graph of a stochastic matrix.
/// Exact: an edge exists iff the entry is strictly positive.
template <typename Derived>
std::vector<std::vector<int>> closed_classes(const Eigen::MatrixBase<Derived>& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) {
    reach[i][i] = 1;
    for (int j = 0; j < n; ++j) {
      if (m(i, j) > 0) reach[i][j] = 1;
    }
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (reach[i][k])
        for (int j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = 1;

  std::vector<std::vector<int>> classes;
  std::vector<char> assigned(n, 0);
  for (int i = 0; i < n; ++i) {
    if (assigned[i]) continue;
    std::vector<int> cls;
    for (int j = 0; j < n; ++j) {
      if (reach[i][j] && reach[j][i]) cls.push_back(j);
    }
    for (int j : cls) assigned[j] = 1;
    // closed iff everything reachable from i is inside the class
    bool closed = true;
    for (int j = 0; j < n && closed; ++j) {
      if (reach[i][j] && !reach[j][i]) closed = false;
    }
    if (closed) classes.push_back(std::move(cls));
  }
  return classes;
}

template <typename Derived>
bool has_unique_stationary(const Eigen::MatrixBase<Derived>& m) {
  return closed_classes(m).size() == 1;
}

namespace detail {

template <typename Scalar, int N>
Eigen::Matrix<Scalar, N, 1> solve_stationary(const Eigen::Matrix<Scalar, N, N>& m) {
  const Eigen::Index n = m.rows();
  using Mat = Eigen::Matrix<Scalar, N, N>;
  using Vec = Eigen::Matrix<Scalar, N, 1>;
  // v (M - I) = 0 with one balance equation swapped for sum(v) = 1.
  Mat a = m.transpose() - Mat::Identity(n, n);
  a.row(n - 1).setOnes();
  Vec rhs = Vec::Zero(n);
  rhs(n - 1) = Scalar(1);

  Eigen::FullPivLU<Mat> lu(a);
  Vec v;
  if (lu.isInvertible()) {
    v = lu.solve(rhs);
  } else {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> stacked(n + 1, n);
    stacked.topRows(n) = m.transpose() - Mat::Identity(n, n);
    stacked.row(n).setOnes();
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> b = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(n + 1);
    b(n) = Scalar(1);
    v = stacked.colPivHouseholderQr().solve(b);
  }
  v = v.cwiseMax(Scalar(0));
  return v / v.sum();
}

}  // namespace detail

/// Unique stationary vector v with v M = v and sum(v) = 1. Throws NotErgodic
/// when the chain has more than one closed class.
template <typename Scalar, int N>
Eigen::Matrix<Scalar, N, 1> stationary_distribution(const Eigen::Matrix<Scalar, N, N>& m) {
  if (!has_unique_stationary(m)) {
    throw NotErgodic("joint chain has more than one closed class");
  }
  return detail::solve_stationary(m);
}

/// Cesaro-limit occupancy starting from `start`: stationary mass of every
/// closed class weighted by the chance of being absorbed into it.
template <typename Scalar, int N>
Eigen::Matrix<Scalar, N, 1> long_run_distribution(const Eigen::Matrix<Scalar, N, N>& m,
                                                  const Eigen::Matrix<Scalar, N, 1>& start) {
  using DMat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using DVec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const int n = static_cast<int>(m.rows());
  const auto classes = closed_classes(m);
  if (classes.size() == 1) return detail::solve_stationary(m);

  std::vector<int> class_of(n, -1);
  for (int c = 0; c < static_cast<int>(classes.size()); ++c)
    for (int s : classes[c]) class_of[s] = c;
  std::vector<int> transient;
  for (int s = 0; s < n; ++s)
    if (class_of[s] < 0) transient.push_back(s);

  const int nt = static_cast<int>(transient.size());
  const int nc = static_cast<int>(classes.size());
  // absorption[t][c]: chance a walk from transient state t ends in class c
  DMat absorption = DMat::Zero(nt, nc);
  if (nt > 0) {
    DMat q(nt, nt), r = DMat::Zero(nt, nc);
    for (int i = 0; i < nt; ++i) {
      for (int j = 0; j < nt; ++j) q(i, j) = m(transient[i], transient[j]);
      for (int s = 0; s < n; ++s)
        if (class_of[s] >= 0) r(i, class_of[s]) += m(transient[i], s);
    }
    absorption = (DMat::Identity(nt, nt) - q).fullPivLu().solve(r);
  }

  Eigen::Matrix<Scalar, N, 1> v = Eigen::Matrix<Scalar, N, 1>::Zero(n);
  for (int c = 0; c < nc; ++c) {
    Scalar weight = 0;
    for (int s : classes[c]) weight += start(s);
    for (int i = 0; i < nt; ++i) weight += start(transient[i]) * absorption(i, c);
    if (weight <= 0) continue;

    const int k = static_cast<int>(classes[c].size());
    DMat sub(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub(i, j) = m(classes[c][i], classes[c][j]);
    const DVec pi = detail::solve_stationary<Scalar, Eigen::Dynamic>(sub);
    for (int i = 0; i < k; ++i) v(classes[c][i]) += weight * pi(i);
  }
  return v;
}

}  // namespace dilemma

#endif  // DILEMMA_MARKOV_HPP
