#pragma once

// Integration of x'' = grad U(x) with an embedded Dormand-Prince 5(4) pair,
// dense output, energy monitoring, and detection of the end of the maximal
// interval (collision guard or step-size collapse).

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "nbvar/action.hpp"

namespace nbvar {

struct State {
  Configuration x;
  TangentVector v;
  double t = 0.0;

  friend bool operator==(const State&, const State&) = default;
};

enum class Termination { horizon, collision_guard, step_underflow, energy_drift };

std::string to_string(Termination t);
Termination termination_from_string(const std::string& s);

struct Trajectory {
  Masses masses;
  std::vector<State> samples;
  double h = 0.0;  ///< energy of the initial state
  double omega_plus = std::numeric_limits<double>::infinity();  ///< last accepted time if stopped early
  Termination terminated_by = Termination::horizon;
  double max_energy_drift = 0.0;  ///< max |E(t) - E(0)| over accepted steps, relative
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;

  double t_begin() const { return samples.front().t; }
  double t_end() const { return samples.back().t; }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

struct IntegrateOptions {
  double rtol = 1e-10;              ///< target accuracy; steps are controlled at rtol / 100
  double atol = -1.0;               ///< < 0: same as rtol
  std::vector<double> sample_times; ///< dense-output times; empty: every accepted step
  double guard_factor = 1e-9;       ///< collision guard = guard_factor * initial diameter
  double drift_tol = -1.0;          ///< < 0: max(1e-6, 1e3 * rtol)
  std::size_t max_steps = 100'000'000;
};

/// |v|^2 / 2 - U(x).
double energy(const State& s, const Masses& m);

Trajectory integrate(const State& s0, const Masses& m, double t_end, double rtol);
Trajectory integrate(const State& s0, const Masses& m, double t_end, const IntegrateOptions& opts);

/// Velocity at the first node from a 4th-order one-sided difference (K >= 4).
TangentVector initial_velocity(const DiscretePath& p);

/// Shoots from p's first node with its fitted initial velocity over p's
/// duration; returns |x(T) - p_K|_m / endpoint scale (+inf if the flow stops early).
double shoot_and_compare(const DiscretePath& p, double rtol);

std::vector<double> linspace(double a, double b, std::size_t n);
std::vector<double> logspace(double a, double b, std::size_t n);

}  // namespace nbvar
