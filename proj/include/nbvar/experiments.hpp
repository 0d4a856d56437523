#pragma once

// End-to-end construction of a partially hyperbolic motion as a limit of
// free-time minimizing hyperbolic rays, plus the horofunction and
// final-configuration-map diagnostics that go with it.

#include <functional>
#include <string>
#include <vector>

#include "nbvar/asymptotics.hpp"
#include "nbvar/flow.hpp"
#include "nbvar/minimizer.hpp"

namespace nbvar {

/// Displacement eps * direction applied to one body of b.
struct Perturbation {
  std::size_t body = 0;
  Point direction;
};

struct DirectionSequence {
  Masses masses;
  double h = 0.0;
  Configuration b;                 ///< recentered and rescaled to energy h
  std::vector<double> eps;         ///< strictly decreasing, positive
  std::vector<Configuration> a;    ///< a_n, one per eps

  std::size_t size() const noexcept { return a.size(); }
};

/// Moves x to zero center of mass and rescales so that |x|^2 / 2 = h.
Configuration normalize_direction(Configuration x, const Masses& m, double h);

DirectionSequence build_direction_sequence(const Configuration& b_raw, const Masses& m, double h,
                                           std::vector<double> eps_schedule,
                                           const std::vector<Perturbation>& perturbation);

struct HyperbolicRay {
  FreeTimeResult minimizer;
  Configuration target;     ///< lambda * a + barycenter(x0)
  double lambda = 0.0;
  TangentVector v0;         ///< fitted initial velocity
  double tail_angle = 0.0;  ///< mass-metric angle between the path's tail velocity and a
  double sphere_residual = 0.0;  ///< |v0|^2 / 2 - U(x0) - h
};

/// Free-time minimizer from x0 towards the direction a (|a|^2 / 2 = h).
HyperbolicRay build_hyperbolic_ray(const Configuration& x0, const Configuration& a, const Masses& m, double h,
                                   double lambda, const MinimizeOptions& opts = {});

/// lambda_n from (n, eps_n).
using LambdaRule = std::function<double(std::size_t, double)>;
/// lambda_n = c / eps_n.
LambdaRule inverse_eps_rule(double c);

struct HorofunctionOptions {
  MinimizeOptions minimize;
  /// Split time of the calibration check along the ray from x_ref (clamped to a tenth of tau*).
  double calibration_time = 10.0;
};

struct HorofunctionSample {
  std::size_t index = 0;
  double eps = 0.0;
  double lambda = 0.0;
  Configuration p;
  bool ok = false;
  std::string error;
  double phi_ref = 0.0;              ///< phi_h(x_ref, p)
  std::vector<double> phi_probe;     ///< phi_h(probe_k, p)
  std::vector<double> u_values;      ///< phi_h(probe_k, p) - phi_h(x_ref, p)
  std::vector<double> cauchy;        ///< |change of u_values[k]| since the previous good sample
  double domination_residual = 0.0;  ///< max over ordered pairs of u(x) - u(y) - phi_h(x, y)
  double calib_residual = 0.0;       ///< relative
  double calib_time = 0.0;
  bool converged = false;
};

struct HorofunctionReport {
  std::vector<HorofunctionSample> samples;
  /// phi_h between the points {probes..., x_ref}; row = start, column = end, diagonal 0.
  std::vector<std::vector<double>> phi_pairs;
  double max_domination = 0.0;
  double max_calibration = 0.0;
  bool cauchy_decreasing = false;
};

HorofunctionReport estimate_horofunction(const std::vector<Configuration>& probes, const Configuration& x_ref,
                                         const DirectionSequence& seq, const std::vector<double>& lambdas,
                                         const HorofunctionOptions& opts = {});

enum class VelocityExtrapolation { last, richardson };

struct ExperimentOptions {
  MinimizeOptions minimize;
  VelocityExtrapolation extrapolation = VelocityExtrapolation::last;
  double rtol = 1e-11;
  std::vector<FitWindow> windows;  ///< empty: default_windows(horizon)
  std::size_t samples_per_window = 200;
  std::size_t uniform_samples = 1001;
  ClassifyOptions classify{.cluster_rel_tol = 0.2};
};

struct RayRecord {
  std::size_t index = 0;
  double eps = 0.0;
  double lambda = 0.0;
  bool ok = false;
  std::string error;
  double tau_star = 0.0;
  double value = 0.0;
  double energy_residual = 0.0;
  bool converged = false;
  double sphere_residual = 0.0;
  double tail_angle = 0.0;
  TangentVector v;
};

struct ExperimentReport {
  double h = 0.0;
  double horizon = 0.0;
  std::vector<RayRecord> rays;
  std::vector<double> cauchy;        ///< |v_{n+1} - v_n| over consecutive surviving indices
  bool cauchy_decreasing = false;
  TangentVector v_raw;               ///< extrapolated velocity before projection
  TangentVector v;                   ///< projected onto zero momentum and energy h
  double projection_shift = 0.0;     ///< |v - v_raw|
  Trajectory zeta;
  double energy_drift = 0.0;         ///< max |E(zeta(t)) - h| over samples
  double com_drift = 0.0;            ///< max |G(zeta(t)) - G(x0)| over samples
  ClassificationReport classification;
  Configuration b_prime;             ///< fitted final configuration of zeta (primary window)
  double G_b_prime = 0.0;            ///< |G(b')|
  double energy_b_prime = 0.0;
};

ExperimentReport partially_hyperbolic_experiment(const Configuration& x0, const DirectionSequence& seq, double h,
                                                 const LambdaRule& lambda_rule, double horizon,
                                                 const ExperimentOptions& opts = {});

/// Zero total momentum, then rescale so that |v|^2 / 2 - U(x) = h.
TangentVector project_velocity(TangentVector v, const Configuration& x, const Masses& m, double h);

struct ProbeFamily {
  Configuration x0;
  TangentVector v_base;
  TangentVector v_dir;
  std::vector<double> params;  ///< v(s) = v_base + s v_dir, projected to energy h
  double h = 0.5;
  double t_end = 1000.0;
  FitWindow window{100.0, 1000.0};
  double rtol = 1e-10;
  FitModel model = FitModel::asymptotic;
};

struct ProbeRow {
  double s = 0.0;
  bool ok = false;
  std::string error;
  Configuration a;
  double fit_residual = 0.0;
  double energy_of_a = 0.0;
  double distance_to_b = 0.0;  ///< |a - b|, 0 when no b was given
};

struct ProbeTable {
  std::vector<ProbeRow> rows;
  double max_jump = 0.0;           ///< max |a(s_{k+1}) - a(s_k)| over adjacent good rows
  double max_jump_per_step = 0.0;  ///< max of jump / |s_{k+1} - s_k|
};

/// Integrates each member of the family and tabulates its fitted final configuration.
ProbeTable continuity_probe_C(const ProbeFamily& family, const Masses& m, const Configuration& b = {});

}  // namespace nbvar
