#pragma once

#include "walkplot/graph.hpp"
#include "walkplot/rng.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <vector>

namespace walkplot {

enum class LayoutInit { Circle, SeededRandom };

struct LayoutParams {
  double pane = 1.0;      // D0, side length of the square display pane
  double sigma = 1.0;     // spring-constant hyperparameter in delta = sigma / p^2
  double epsilon = 0.0;   // gradient tolerance; <= 0 means auto (1e-4 * pane)
  int max_outer = 0;      // node-selection rounds; <= 0 means auto (100 * |members|)
  int max_inner = 50;     // Newton steps per selected node
  LayoutInit init = LayoutInit::Circle;

  void validate() const;
  double effective_epsilon() const { return epsilon > 0.0 ? epsilon : 1e-4 * pane; }
  int effective_max_outer(int n) const { return max_outer > 0 ? max_outer : 100 * n; }
};

// Pairwise spring targets: tau(i,j) = (D0 / lambda) * p(i,j) is the desired
// planar distance, delta(i,j) = sigma / p(i,j)^2 the spring strength.
// Diagonals are unused. degenerate is set for single-node systems (lambda=0);
// callers bypass minimization and center the node.
template <typename Scalar>
struct SpringSystemT {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> tau;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> delta;
  int size = 0;
  bool degenerate = false;
};

using SpringSystem = SpringSystemT<double>;

SpringSystem build_springs(const DistanceMatrix& dm, const LayoutParams& params);

// Coordinates are a 2 x n matrix, one column per node.
template <typename Scalar>
using Coords = Eigen::Matrix<Scalar, 2, Eigen::Dynamic>;

// Total spring energy: sum over i<j of 0.5 * delta_ij * (|c_i - c_j| - tau_ij)^2.
template <typename Derived, typename Scalar = typename Derived::Scalar>
Scalar layout_energy(const Eigen::MatrixBase<Derived>& coords, const SpringSystemT<Scalar>& s) {
  Scalar total = Scalar(0);
  for (int i = 0; i + 1 < s.size; ++i) {
    for (int j = i + 1; j < s.size; ++j) {
      Scalar dist = (coords.col(i) - coords.col(j)).norm();
      Scalar r = dist - s.tau(i, j);
      total += Scalar(0.5) * s.delta(i, j) * r * r;
    }
  }
  return total;
}

// The terms of the energy that involve node m; moving m changes the total by
// the change in this partial sum, which keeps acceptance tests O(n).
template <typename Derived, typename Scalar = typename Derived::Scalar>
Scalar node_energy(const Eigen::MatrixBase<Derived>& coords, const SpringSystemT<Scalar>& s,
                   int m) {
  Scalar total = Scalar(0);
  for (int i = 0; i < s.size; ++i) {
    if (i == m) continue;
    Scalar dist = (coords.col(m) - coords.col(i)).norm();
    Scalar r = dist - s.tau(m, i);
    total += Scalar(0.5) * s.delta(m, i) * r * r;
  }
  return total;
}

inline constexpr double kCoincidenceTolerance = 1e-9;

// Analytic partials of the energy with respect to node m's coordinates.
// Throws CoincidenceFault when m sits within kCoincidenceTolerance of
// another node; callers jitter deterministically and retry.
class CoincidenceFault : public Error {
public:
  CoincidenceFault(int node, int other)
      : Error("nodes " + std::to_string(node) + " and " + std::to_string(other) +
              " are coincident; gradient undefined"),
        node(node), other(other) {}
  int node;
  int other;
};

template <typename Derived, typename Scalar = typename Derived::Scalar>
Eigen::Matrix<Scalar, 2, 1> layout_gradient(const Eigen::MatrixBase<Derived>& coords,
                                            const SpringSystemT<Scalar>& s, int m) {
  Eigen::Matrix<Scalar, 2, 1> g = Eigen::Matrix<Scalar, 2, 1>::Zero();
  for (int i = 0; i < s.size; ++i) {
    if (i == m) continue;
    Eigen::Matrix<Scalar, 2, 1> diff = coords.col(m) - coords.col(i);
    Scalar dist = diff.norm();
    if (dist < Scalar(kCoincidenceTolerance)) throw CoincidenceFault(m, i);
    g += s.delta(m, i) * (diff - s.tau(m, i) * diff / dist);
  }
  return g;
}

// Analytic 2x2 Hessian of the energy in node m's coordinates:
//   d2/dh2   = sum delta * (1 - tau * dy^2 / dist^3)
//   d2/dhdv  = sum delta * tau * dx * dy / dist^3
//   d2/dv2   = sum delta * (1 - tau * dx^2 / dist^3)
template <typename Derived, typename Scalar = typename Derived::Scalar>
Eigen::Matrix<Scalar, 2, 2> layout_hessian(const Eigen::MatrixBase<Derived>& coords,
                                           const SpringSystemT<Scalar>& s, int m) {
  Scalar hhh = Scalar(0), hhv = Scalar(0), hvv = Scalar(0);
  for (int i = 0; i < s.size; ++i) {
    if (i == m) continue;
    Eigen::Matrix<Scalar, 2, 1> diff = coords.col(m) - coords.col(i);
    Scalar dist = diff.norm();
    if (dist < Scalar(kCoincidenceTolerance)) throw CoincidenceFault(m, i);
    Scalar cube = dist * dist * dist;
    Scalar t = s.tau(m, i);
    Scalar d = s.delta(m, i);
    hhh += d * (Scalar(1) - t * diff.y() * diff.y() / cube);
    hhv += d * t * diff.x() * diff.y() / cube;
    hvv += d * (Scalar(1) - t * diff.x() * diff.x() / cube);
  }
  Eigen::Matrix<Scalar, 2, 2> h;
  h << hhh, hhv, hhv, hvv;
  return h;
}

// One safeguarded Newton update of node m, in place. Solves the 2x2 system
// from the analytic Hessian; if the step fails to decrease the energy or the
// system is near-singular, falls back to gradient descent with backtracking
// halving (up to 30 halvings). Never increases the energy.
// Returns the displacement length (0 when no acceptable step exists).
double newton_step(Coords<double>& coords, const SpringSystem& springs, int m);

struct Layout {
  Eigen::Matrix2Xd coords;  // one column per node, local-id order
  double energy = 0.0;
  bool converged = false;
  int rounds = 0;
};

// Minimizes the spring energy by repeatedly moving the node with the largest
// gradient norm until every node satisfies the epsilon test or the round cap
// is hit. rng is consumed only by seeded-random initialization. The optional
// trace records the energy after every outer round (non-increasing).
Layout kamada_kawai(const NeighborhoodSubgraph& sub, const DistanceMatrix& dm,
                    const LayoutParams& params, Rng& rng,
                    std::vector<double>* energy_trace = nullptr);

}  // namespace walkplot
