#pragma once

// Long-time analysis of trajectories: final configuration a = lim x(t)/t,
// cluster structure of a, power-law growth of mutual distances, and a
// finite-window motion label.

#include <string>
#include <utility>
#include <vector>

#include "nbvar/flow.hpp"

namespace nbvar {

struct FitWindow {
  double begin = 0.0;
  double end = 0.0;
  friend bool operator==(const FitWindow&, const FitWindow&) = default;
};

/// Columns of the per-coordinate least-squares fit x(t) ~ a t + ...
enum class FitModel {
  affine,     ///< a t + c
  asymptotic  ///< a t + w t^(2/3) + q log t + c
};

struct AsymptoticConfiguration {
  Configuration a;
  FitWindow fit_window;
  double fit_residual = 0.0;  ///< RMS mass-metric misfit divided by the window end time
  double energy_of_a = 0.0;   ///< |a|^2 / 2
};

struct ClusterPartition {
  std::vector<std::vector<std::size_t>> blocks;  ///< sorted, ordered by smallest member
  double separation_margin = 0.0;
};

AsymptoticConfiguration fit_final_configuration(const Trajectory& tr, FitWindow window,
                                                FitModel model = FitModel::affine);

/// Single-linkage grouping of the a_i at threshold rel_tol * diam{a_i}. The
/// margin is (min distance across blocks) / max(max distance inside a block,
/// threshold); a single block has margin 0.
ClusterPartition detect_clusters(const Configuration& a, double rel_tol = 1e-2);

/// Least-squares slope of log |x_i - x_j| against log t over the window.
double growth_exponent(const Trajectory& tr, std::pair<std::size_t, std::size_t> pair, FitWindow window);

enum class MotionClass { hyperbolic, partially_hyperbolic, unresolved };

std::string to_string(MotionClass c);
MotionClass motion_class_from_string(const std::string& s);

struct ClassifyOptions {
  double cluster_rel_tol = 1e-2;
  double min_margin = 2.0;
  double exponent_tol = 0.05;
  /// Non-unresolved labels need |energy_of_a - h| <= energy_rel_tol * h.
  double energy_rel_tol = 0.05;
  FitModel model = FitModel::asymptotic;
};

struct PairExponent {
  std::size_t i = 0, j = 0;
  double exponent = 0.0;
  bool same_cluster = false;
  friend bool operator==(const PairExponent&, const PairExponent&) = default;
};

struct WindowAnalysis {
  FitWindow window;
  MotionClass label = MotionClass::unresolved;
  Configuration a;
  std::vector<std::vector<std::size_t>> blocks;
  double margin = 0.0;
  double residual = 0.0;
  double energy_of_a = 0.0;
  std::vector<PairExponent> exponents;
  friend bool operator==(const WindowAnalysis&, const WindowAnalysis&) = default;
};

struct ClassificationReport {
  MotionClass label = MotionClass::unresolved;
  double h = 0.0;
  /// One entry per window, in the order given; the last one is the primary window.
  std::vector<WindowAnalysis> windows;

  const WindowAnalysis& primary() const { return windows.back(); }
  friend bool operator==(const ClassificationReport&, const ClassificationReport&) = default;
};

/// Labels each window separately; the overall label is the common one, or
/// unresolved if the windows disagree.
ClassificationReport classify_motion(const Trajectory& tr, const std::vector<FitWindow>& windows,
                                     const ClassifyOptions& opts = {});

/// The default pair of windows for a run of length T: [T/20, T/2] and [T/10, T].
std::vector<FitWindow> default_windows(double horizon);

/// Sample times for classify_motion: `per_window` log-spaced points in each window.
std::vector<double> window_sample_times(const std::vector<FitWindow>& windows, std::size_t per_window,
                                        double t_end, std::size_t uniform = 0);

}  // namespace nbvar
