#include "walkplot/layout.hpp"

#include <algorithm>
#include <cmath>

namespace walkplot {

void LayoutParams::validate() const {
  if (!(pane > 0.0)) throw Error("pane side length must be positive");
  if (!(sigma > 0.0)) throw Error("sigma must be positive");
  if (max_inner < 1) throw Error("max_inner must be >= 1");
}

SpringSystem build_springs(const DistanceMatrix& dm, const LayoutParams& params) {
  params.validate();
  SpringSystem s;
  s.size = static_cast<int>(dm.p.rows());
  if (dm.lambda == 0) {
    s.degenerate = true;
    return s;
  }
  const double edge_length = params.pane / static_cast<double>(dm.lambda);
  s.tau.resize(s.size, s.size);
  s.delta.resize(s.size, s.size);
  for (int i = 0; i < s.size; ++i) {
    for (int j = 0; j < s.size; ++j) {
      if (i == j) {
        s.tau(i, j) = 0.0;
        s.delta(i, j) = 0.0;
        continue;
      }
      const double hops = static_cast<double>(dm.p(i, j));
      s.tau(i, j) = edge_length * hops;
      s.delta(i, j) = params.sigma / (hops * hops);
    }
  }
  return s;
}

double newton_step(Coords<double>& coords, const SpringSystem& springs, int m) {
  const Eigen::Vector2d g = layout_gradient(coords, springs, m);
  const double e_before = node_energy(coords, springs, m);
  const Eigen::Vector2d c_before = coords.col(m);

  auto try_move = [&](const Eigen::Vector2d& displacement) -> bool {
    Eigen::Vector2d candidate = c_before + displacement;
    if (!candidate.allFinite()) return false;
    coords.col(m) = candidate;
    if (node_energy(coords, springs, m) < e_before) return true;
    coords.col(m) = c_before;
    return false;
  };

  const Eigen::Matrix2d h = layout_hessian(coords, springs, m);
  const double det = h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0);
  if (std::isfinite(det) && std::abs(det) >= 1e-12) {
    Eigen::Vector2d step;
    step.x() = (-g.x() * h(1, 1) + g.y() * h(0, 1)) / det;
    step.y() = (-g.y() * h(0, 0) + g.x() * h(1, 0)) / det;
    if (try_move(step)) return (coords.col(m) - c_before).norm();
  }

  // Fallback: descend along -g with backtracking halving. The initial trial
  // displacement uses the mean spring target as the length scale.
  const double gnorm = g.norm();
  if (gnorm == 0.0) return 0.0;
  double scale = springs.tau.row(m).sum() / std::max(1, springs.size - 1);
  if (!(scale > 0.0)) scale = 1.0;
  Eigen::Vector2d dir = -g / gnorm;
  for (int halving = 0; halving <= 30; ++halving) {
    if (try_move(scale * dir)) return (coords.col(m) - c_before).norm();
    scale *= 0.5;
  }
  return 0.0;
}

namespace {

Eigen::Vector2d jitter_offset(int node, int retry, double pane) {
  std::uint64_t x = (static_cast<std::uint64_t>(node) << 20) ^ static_cast<std::uint64_t>(retry);
  const double angle =
      6.283185307179586 * static_cast<double>(Rng::splitmix64(x) >> 11) * 0x1.0p-53;
  return 1e-6 * pane * Eigen::Vector2d(std::cos(angle), std::sin(angle));
}

// Largest gradient norm and its node; jitters coincident nodes in place.
std::pair<int, double> max_gradient_node(Coords<double>& coords, const SpringSystem& s,
                                         double pane) {
  int best = -1;
  double best_norm = -1.0;
  for (int m = 0; m < s.size; ++m) {
    double norm = 0.0;
    for (int retry = 0;; ++retry) {
      try {
        norm = layout_gradient(coords, s, m).norm();
        break;
      } catch (const CoincidenceFault&) {
        if (retry >= 16) throw;
        coords.col(m) += jitter_offset(m, retry, pane);
      }
    }
    if (norm > best_norm) {
      best_norm = norm;
      best = m;
    }
  }
  return {best, best_norm};
}

}  // namespace

Layout kamada_kawai(const NeighborhoodSubgraph& sub, const DistanceMatrix& dm,
                    const LayoutParams& params, Rng& rng, std::vector<double>* energy_trace) {
  params.validate();
  const int n = sub.size();
  if (n < 1) throw Error("cannot lay out an empty subgraph");

  Layout layout;
  layout.coords.resize(2, n);
  const double half = params.pane / 2.0;
  if (n == 1) {
    layout.coords.col(0) = Eigen::Vector2d(half, half);
    layout.energy = 0.0;
    layout.converged = true;
    if (energy_trace) energy_trace->push_back(0.0);
    return layout;
  }

  const SpringSystem springs = build_springs(dm, params);
  if (springs.degenerate) throw Error("degenerate spring system for a multi-node subgraph");

  if (params.init == LayoutInit::Circle) {
    for (int i = 0; i < n; ++i) {
      const double angle = 6.283185307179586 * static_cast<double>(i) / static_cast<double>(n);
      layout.coords.col(i) =
          Eigen::Vector2d(half + half * std::cos(angle), half + half * std::sin(angle));
    }
  } else {
    for (int i = 0; i < n; ++i)
      layout.coords.col(i) = Eigen::Vector2d(rng.uniform() * params.pane,
                                             rng.uniform() * params.pane);
  }

  const double eps = params.effective_epsilon();
  const int max_outer = params.effective_max_outer(n);
  double tracked_energy = layout_energy(layout.coords, springs);
  if (energy_trace) energy_trace->push_back(tracked_energy);

  int round = 0;
  for (; round < max_outer; ++round) {
    auto [m, norm] = max_gradient_node(layout.coords, springs, params.pane);
    if (norm < eps) {
      layout.converged = true;
      break;
    }
    const Eigen::Vector2d round_start = layout.coords.col(m);
    const double e_start = node_energy(layout.coords, springs, m);
    for (int inner = 0; inner < params.max_inner; ++inner) {
      double moved = 0.0;
      for (int retry = 0;; ++retry) {
        try {
          moved = newton_step(layout.coords, springs, m);
          break;
        } catch (const CoincidenceFault&) {
          if (retry >= 16) throw;
          layout.coords.col(m) += jitter_offset(m, retry, params.pane);
        }
      }
      if (moved == 0.0) break;
      if (layout_gradient(layout.coords, springs, m).norm() < eps) break;
    }
    // Jitter is the only move that may raise the energy; revert the round if
    // it was not recovered, which keeps the recorded trace non-increasing.
    const double e_end = node_energy(layout.coords, springs, m);
    if (e_end > e_start)
      layout.coords.col(m) = round_start;
    else
      tracked_energy += e_end - e_start;
    if (energy_trace) energy_trace->push_back(tracked_energy);
  }
  layout.rounds = round;
  if (!layout.coords.allFinite())
    throw Error("layout produced non-finite coordinates (subgraph focus " +
                std::to_string(sub.focus) + ")");
  layout.energy = layout_energy(layout.coords, springs);
  return layout;
}

}  // namespace walkplot
