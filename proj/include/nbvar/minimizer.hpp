#pragma once

// Numerical critical potentials.
//
//   phi(x, y, tau)  ~ minimize_fixed: local minimizer of the discrete action with
//                     fixed endpoints and duration;
//   phi_h(x, y)     ~ minimize_free_time: inf over tau of phi(x, y, tau) + h tau.
//
// Only local minimality is certified. Multi-start and coarse-to-fine mesh
// continuation are used to land in a good basin.

#include <cstdint>
#include <utility>
#include <vector>

#include "nbvar/action.hpp"

namespace nbvar {

struct MinimizeOptions {
  std::size_t k0 = 50;         ///< intervals on the first grid (>= 8)
  int refinements = 5;         ///< mesh doublings after the first solve
  double grad_tol = 1e-9;      ///< mass-metric norm of the action gradient
  int max_iters = 5000;        ///< quasi-Newton iterations per grid
  double barrier_eps = -1.0;   ///< line-search collision guard; < 0 means 1e-6 * endpoint scale
  int multistart = 4;          ///< extra randomized starts (used when d >= 2)
  std::uint64_t seed = 1;
  int memory = 8;              ///< L-BFGS history length
  double tau_tol = 1e-6;       ///< golden-section stop: bracket width in log(tau)
  double coarse_dt = 0.0;      ///< > 0: raise k0 so the first grid has dt <= coarse_dt
  double refine_window = 0.05; ///< half width in log(tau) of the bracket on refined grids
  int bracket_expansions = 10;

  void validate() const;
};

struct FixedTimeResult {
  DiscretePath path;
  double value = 0.0;
  double grad_norm = 0.0;
  bool converged = false;
  double min_interior_distance = 0.0;
  int iterations = 0;
};

struct FreeTimeResult {
  DiscretePath path;
  double tau_star = 0.0;
  double value = 0.0;
  double energy_residual = 0.0;
  bool converged = false;
  /// x == y: the infimum is approached by vanishing durations and is not attained.
  bool degenerate = false;
  double grad_norm = 0.0;
  /// (tau, phi(x, y, tau) + h tau) for every duration evaluated on the finest grid.
  std::vector<std::pair<double, double>> samples;
};

struct CollisionCheck {
  bool collision_free = true;
  double distance = 0.0;  // +inf when there is no pair to measure
  std::size_t node = 0, i = 0, j = 0;
};

/// Local minimizer of the discrete action from x to y in time tau.
FixedTimeResult minimize_fixed(const Configuration& x, const Configuration& y, double tau,
                               const Masses& m, const MinimizeOptions& opts = {});

/// Descends from an initial path on its own grid (no refinement, no restarts).
FixedTimeResult relax_path(DiscretePath initial, const MinimizeOptions& opts = {});

/// Golden-section search over tau of minimize_fixed(x, y, tau) + h tau.
FreeTimeResult minimize_free_time(const Configuration& x, const Configuration& y, EnergyLevel h,
                                  const Masses& m, const MinimizeOptions& opts = {});

/// Doubles the number of intervals; new nodes are midpoints.
DiscretePath refine(const DiscretePath& p);

/// True iff every interior node has all mutual distances >= delta.
CollisionCheck check_interior_collisionfree(const DiscretePath& p, double delta);

/// Duration bracket used to start the free-time search.
std::pair<double, double> initial_tau_bracket(const Configuration& x, const Configuration& y,
                                              double h, const Masses& m);

}  // namespace nbvar
