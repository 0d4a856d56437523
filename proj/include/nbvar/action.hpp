#pragma once

// Discrete paths on uniform time grids and the functionals evaluated on them.
//
// The Newtonian action is discretized with exact piecewise-linear kinetic
// energy and trapezoidal potential energy:
//     A(p) = sum_k |x_{k+1} - x_k|^2 / (2 dt) + dt (U(x_k) + U(x_{k+1})) / 2.

#include <cstddef>
#include <vector>

#include "nbvar/core.hpp"
#include "nbvar/kernels.hpp"

namespace nbvar {

class EnergyLevel {
 public:
  explicit EnergyLevel(double h);
  double value() const noexcept { return h_; }
  operator double() const noexcept { return h_; }

 private:
  double h_;
};

class DiscretePath {
 public:
  DiscretePath() = default;
  /// nodes holds K + 1 configurations back to back, each N x d row-major.
  DiscretePath(Masses m, std::size_t dim, double t0, double duration, std::size_t intervals,
               std::vector<double> nodes);
  /// Explicit time stamps (as read from disk); they must be uniformly spaced.
  DiscretePath(Masses m, std::size_t dim, std::vector<double> times, std::vector<double> nodes);

  static DiscretePath straight(const Configuration& x, const Configuration& y, double duration,
                               std::size_t intervals, const Masses& m, double t0 = 0.0);
  static DiscretePath constant(const Configuration& x, double duration, std::size_t intervals,
                               const Masses& m, double t0 = 0.0);

  std::size_t intervals() const noexcept { return times_.size() - 1; }
  std::size_t bodies() const noexcept { return m_.size(); }
  std::size_t dim() const noexcept { return d_; }
  std::size_t stride() const noexcept { return m_.size() * d_; }
  const Masses& masses() const noexcept { return m_; }

  double t0() const noexcept { return times_.front(); }
  double duration() const noexcept { return times_.back() - times_.front(); }
  double dt() const noexcept { return duration() / static_cast<double>(intervals()); }
  const std::vector<double>& times() const noexcept { return times_; }

  Configuration node(std::size_t k) const;
  Configuration front() const { return node(0); }
  Configuration back() const { return node(intervals()); }
  std::span<double> node_data(std::size_t k) { return {x_.data() + k * stride(), stride()}; }
  std::span<const double> node_data(std::size_t k) const { return {x_.data() + k * stride(), stride()}; }

  std::span<const double> nodes() const noexcept { return x_; }
  std::span<double> nodes() noexcept { return x_; }
  /// Interior nodes 1..K-1 as one contiguous block.
  std::span<double> interior() { return {x_.data() + stride(), (intervals() - 1) * stride()}; }
  std::span<const double> interior() const { return {x_.data() + stride(), (intervals() - 1) * stride()}; }

  /// Keeps the nodes and stretches the grid to a new duration.
  void set_duration(double duration);

  /// Nodes first..last (inclusive) as a path of their own.
  DiscretePath slice(std::size_t first, std::size_t last) const;

  /// Reversed traversal over the same grid.
  DiscretePath reversed() const;

  kernels::PathData view() const;

  friend bool operator==(const DiscretePath&, const DiscretePath&) = default;

 private:
  Masses m_;
  std::size_t d_ = 0;
  std::vector<double> times_;
  std::vector<double> x_;
};

/// Discrete A_L. Throws CollisionError (with node index) on a collided node.
double action_fixed_time(const DiscretePath& p);

/// A_L + h * tau.
double action_supercritical(const DiscretePath& p, EnergyLevel h);

/// First variation at interior nodes 1..K-1 (endpoints fixed), mass metric.
std::vector<TangentVector> action_gradient(const DiscretePath& p);

/// Jacobi-Maupertuis length sum_k sqrt(2 (h + Ubar_k)) |x_{k+1} - x_k|, with Ubar_k the
/// trapezoidal average used by the action; jm_length <= action_supercritical node by node.
double jm_length(const DiscretePath& p, EnergyLevel h);

/// Per-interval energy |dx|^2 / (2 dt^2) - U(midpoint).
std::vector<double> path_energy_profile(const DiscretePath& p);

/// Throws CollisionError if some node (interior only, or all) is collided.
void require_collisionless(const DiscretePath& p, bool interior_only = false);

}  // namespace nbvar
