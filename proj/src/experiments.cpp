#include "nbvar/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace nbvar {

namespace {

bool in_omega(const Configuration& x) {
  return x.bodies() < 2 || min_mutual_distance(x) > collision_threshold(x);
}

void require_omega(const Configuration& x, const char* what) {
  if (!in_omega(x)) throw InvalidArgument(std::string(what) + " has a collision");
}

TangentVector as_velocity(const Configuration& x) {
  return TangentVector(x.bodies(), x.dim(), x.storage());
}

}  // namespace

Configuration normalize_direction(Configuration x, const Masses& m, double h) {
  if (x.bodies() != m.size()) throw InvalidArgument("normalize_direction: masses do not match");
  Point c = barycenter(x, m);
  for (double& v : c) v = -v;
  x = translated(std::move(x), c);
  double nrm = mass_norm(x, m);
  if (!(nrm > 0.0)) throw InvalidArgument("normalize_direction: configuration is a total collision");
  x *= std::sqrt(2.0 * h) / nrm;
  return x;
}

DirectionSequence build_direction_sequence(const Configuration& b_raw, const Masses& m, double h,
                                           std::vector<double> eps_schedule,
                                           const std::vector<Perturbation>& perturbation) {
  if (!(h > 0.0)) throw DomainError("build_direction_sequence: h must be positive");
  if (b_raw.bodies() != m.size() || b_raw.bodies() < 2)
    throw InvalidArgument("build_direction_sequence: need N >= 2 bodies matching the masses");
  if (eps_schedule.empty()) throw InvalidArgument("build_direction_sequence: empty schedule");
  for (std::size_t k = 0; k < eps_schedule.size(); ++k) {
    if (!(eps_schedule[k] > 0.0)) throw InvalidArgument("build_direction_sequence: eps must be positive");
    if (k && !(eps_schedule[k] < eps_schedule[k - 1]))
      throw InvalidArgument("build_direction_sequence: eps must decrease");
  }
  for (const auto& p : perturbation)
    if (p.body >= b_raw.bodies() || p.direction.size() != b_raw.dim())
      throw InvalidArgument("build_direction_sequence: bad perturbation");

  DirectionSequence seq;
  seq.masses = m;
  seq.h = h;
  seq.b = normalize_direction(b_raw, m, h);
  seq.eps = std::move(eps_schedule);
  for (double eps : seq.eps) {
    Configuration a = b_raw;
    for (const auto& p : perturbation)
      for (std::size_t c = 0; c < a.dim(); ++c) a(p.body, c) += eps * p.direction[c];
    a = normalize_direction(std::move(a), m, h);
    if (!in_omega(a))
      throw ConstructionError("perturbation at eps = " + std::to_string(eps) + " leaves bodies coincident");
    seq.a.push_back(std::move(a));
  }
  return seq;
}

HyperbolicRay build_hyperbolic_ray(const Configuration& x0, const Configuration& a, const Masses& m, double h,
                                   double lambda, const MinimizeOptions& opts) {
  if (x0.bodies() < 2) throw InvalidArgument("build_hyperbolic_ray: need at least two bodies");
  if (!x0.same_shape(a) || x0.bodies() != m.size())
    throw InvalidArgument("build_hyperbolic_ray: shape mismatch");
  if (!(lambda > 0.0)) throw InvalidArgument("build_hyperbolic_ray: lambda must be positive");
  require_omega(x0, "x0");
  require_omega(a, "direction a");
  double ea = 0.5 * mass_inner(a, a, m);
  if (!(std::abs(ea - h) <= 1e-9 * std::max(1.0, h)))
    throw InvalidArgument("build_hyperbolic_ray: |a|^2 / 2 differs from h");

  HyperbolicRay ray;
  ray.lambda = lambda;
  ray.target = translated(a * lambda, barycenter(x0, m));
  ray.minimizer = minimize_free_time(x0, ray.target, EnergyLevel(h), m, opts);

  const DiscretePath& p = ray.minimizer.path;
  ray.v0 = initial_velocity(p);
  ray.sphere_residual = 0.5 * mass_inner(ray.v0, ray.v0, m) - potential(x0, m) - h;

  std::size_t K = p.intervals();
  std::size_t j = std::max<std::size_t>(1, K / 10);
  TangentVector w = as_velocity(p.back() - p.node(K - j));
  w *= 1.0 / (static_cast<double>(j) * p.dt());
  double cosang = mass_inner(w, a, m) / (mass_norm(w, m) * mass_norm(a, m));
  ray.tail_angle = std::acos(std::clamp(cosang, -1.0, 1.0));
  return ray;
}

LambdaRule inverse_eps_rule(double c) {
  if (!(c > 0.0)) throw InvalidArgument("lambda rule constant must be positive");
  return [c](std::size_t, double eps) { return c / eps; };
}

HorofunctionReport estimate_horofunction(const std::vector<Configuration>& probes, const Configuration& x_ref,
                                         const DirectionSequence& seq, const std::vector<double>& lambdas,
                                         const HorofunctionOptions& opts) {
  const Masses& m = seq.masses;
  const EnergyLevel h(seq.h);
  if (lambdas.size() != seq.size()) throw InvalidArgument("estimate_horofunction: one lambda per direction");
  for (std::size_t k = 1; k < lambdas.size(); ++k)
    if (!(lambdas[k] > lambdas[k - 1])) throw InvalidArgument("estimate_horofunction: lambdas must increase");
  require_omega(x_ref, "x_ref");
  for (const auto& x : probes) {
    if (!x.same_shape(x_ref)) throw InvalidArgument("estimate_horofunction: probe shape mismatch");
    require_omega(x, "probe");
  }

  HorofunctionReport rep;
  std::vector<Configuration> pts = probes;
  pts.push_back(x_ref);
  const std::size_t P = pts.size();
  rep.phi_pairs.assign(P, std::vector<double>(P, 0.0));
  for (std::size_t i = 0; i < P; ++i)
    for (std::size_t j = 0; j < P; ++j)
      if (i != j) rep.phi_pairs[i][j] = minimize_free_time(pts[i], pts[j], h, m, opts.minimize).value;

  rep.max_domination = -std::numeric_limits<double>::infinity();
  const Point bary = barycenter(x_ref, m);
  std::optional<std::size_t> prev;
  bool decreasing = true;
  std::vector<double> last_cauchy;
  for (std::size_t n = 0; n < seq.size(); ++n) {
    HorofunctionSample s;
    s.index = n;
    s.eps = seq.eps[n];
    s.lambda = lambdas[n];
    s.p = translated(seq.a[n] * lambdas[n], bary);
    try {
      auto ref = minimize_free_time(x_ref, s.p, h, m, opts.minimize);
      s.converged = ref.converged;
      s.phi_ref = ref.value;
      for (const auto& x : probes) {
        auto r = minimize_free_time(x, s.p, h, m, opts.minimize);
        s.converged = s.converged && r.converged;
        s.phi_probe.push_back(r.value);
        s.u_values.push_back(r.value - ref.value);
      }

      // u(x_ref) = 0 by normalization.
      std::vector<double> u = s.u_values;
      u.push_back(0.0);
      s.domination_residual = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < P; ++i)
        for (std::size_t j = 0; j < P; ++j)
          if (i != j) s.domination_residual = std::max(s.domination_residual, u[i] - u[j] - rep.phi_pairs[i][j]);

      const DiscretePath& g = ref.path;
      std::size_t ks = static_cast<std::size_t>(std::lround(std::min(opts.calibration_time, ref.tau_star / 10.0) / g.dt()));
      ks = std::clamp<std::size_t>(ks, 1, g.intervals() - 1);
      s.calib_time = g.times()[ks] - g.t0();
      double seg = action_supercritical(g.slice(0, ks), h);
      auto rest = minimize_free_time(g.node(ks), s.p, h, m, opts.minimize);
      s.converged = s.converged && rest.converged;
      s.calib_residual = std::abs(ref.value - rest.value - seg) / seg;
      s.ok = true;
    } catch (const std::exception& e) {
      s.error = e.what();
    }

    if (s.ok && prev) {
      const auto& before = rep.samples[*prev].u_values;
      for (std::size_t k = 0; k < s.u_values.size(); ++k) s.cauchy.push_back(std::abs(s.u_values[k] - before[k]));
      if (!last_cauchy.empty())
        for (std::size_t k = 0; k < s.cauchy.size(); ++k)
          if (!(s.cauchy[k] < last_cauchy[k])) decreasing = false;
      last_cauchy = s.cauchy;
    }
    if (s.ok) {
      prev = rep.samples.size();
      rep.max_domination = std::max(rep.max_domination, s.domination_residual);
      rep.max_calibration = std::max(rep.max_calibration, s.calib_residual);
    }
    rep.samples.push_back(std::move(s));
  }
  std::size_t good = std::count_if(rep.samples.begin(), rep.samples.end(), [](const auto& s) { return s.ok; });
  rep.cauchy_decreasing = decreasing && good >= 3;
  if (good == 0) rep.max_domination = rep.max_calibration = std::numeric_limits<double>::infinity();
  return rep;
}

TangentVector project_velocity(TangentVector v, const Configuration& x, const Masses& m, double h) {
  if (!v.same_shape(x) || x.bodies() != m.size()) throw InvalidArgument("project_velocity: shape mismatch");
  const std::size_t n = v.bodies(), d = v.dim();
  for (std::size_t c = 0; c < d; ++c) {
    double p = 0.0;
    for (std::size_t i = 0; i < n; ++i) p += m[i] * v(i, c);
    for (std::size_t i = 0; i < n; ++i) v(i, c) -= p / m.total();
  }
  double kin = h + potential(x, m);
  double nrm2 = mass_inner(v, v, m);
  if (!(kin > 0.0) || !(nrm2 > 0.0)) throw DomainError("project_velocity: energy level not reachable");
  v *= std::sqrt(2.0 * kin / nrm2);
  return v;
}

ExperimentReport partially_hyperbolic_experiment(const Configuration& x0, const DirectionSequence& seq, double h,
                                                 const LambdaRule& lambda_rule, double horizon,
                                                 const ExperimentOptions& opts) {
  const Masses& m = seq.masses;
  if (!(h > 0.0)) throw DomainError("partially_hyperbolic_experiment: h must be positive");
  if (x0.dim() < 2) throw InvalidArgument("partially_hyperbolic_experiment: need d >= 2");
  if (x0.bodies() != m.size() || (seq.size() && !x0.same_shape(seq.a.front())))
    throw InvalidArgument("partially_hyperbolic_experiment: shape mismatch");
  require_omega(x0, "x0");
  if (!(horizon > 0.0)) throw InvalidArgument("partially_hyperbolic_experiment: horizon must be positive");
  if (seq.size() < 3) throw ExperimentError("direction sequence has fewer than 3 terms");

  ExperimentReport rep;
  rep.h = h;
  rep.horizon = horizon;
  std::vector<std::size_t> good;
  for (std::size_t n = 0; n < seq.size(); ++n) {
    RayRecord rec;
    rec.index = n;
    rec.eps = seq.eps[n];
    try {
      rec.lambda = lambda_rule(n, seq.eps[n]);
      auto ray = build_hyperbolic_ray(x0, seq.a[n], m, h, rec.lambda, opts.minimize);
      rec.tau_star = ray.minimizer.tau_star;
      rec.value = ray.minimizer.value;
      rec.energy_residual = ray.minimizer.energy_residual;
      rec.converged = ray.minimizer.converged;
      rec.sphere_residual = ray.sphere_residual;
      rec.tail_angle = ray.tail_angle;
      rec.v = ray.v0;
      rec.ok = true;
      good.push_back(n);
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
    rep.rays.push_back(std::move(rec));
  }
  if (good.size() < 3) throw ExperimentError("fewer than 3 ray builds survived");

  for (std::size_t k = 1; k < good.size(); ++k)
    rep.cauchy.push_back(mass_norm(rep.rays[good[k]].v - rep.rays[good[k - 1]].v, m));
  rep.cauchy_decreasing = true;
  for (std::size_t k = 1; k < rep.cauchy.size(); ++k)
    if (!(rep.cauchy[k] < rep.cauchy[k - 1])) rep.cauchy_decreasing = false;

  const RayRecord& last = rep.rays[good.back()];
  rep.v_raw = last.v;
  if (opts.extrapolation == VelocityExtrapolation::richardson) {
    // Linear in eps through the last two surviving terms, evaluated at eps = 0.
    const RayRecord& before = rep.rays[good[good.size() - 2]];
    double w = before.eps / (before.eps - last.eps);
    rep.v_raw = w * last.v - (w - 1.0) * before.v;
  }
  rep.v = project_velocity(rep.v_raw, x0, m, h);
  rep.projection_shift = mass_norm(rep.v - rep.v_raw, m);

  auto windows = opts.windows.empty() ? default_windows(horizon) : opts.windows;
  IntegrateOptions io;
  io.rtol = opts.rtol;
  io.sample_times = window_sample_times(windows, opts.samples_per_window, horizon, opts.uniform_samples);
  rep.zeta = integrate(State{x0, rep.v, 0.0}, m, horizon, io);

  const Point g0 = center_of_mass(x0, m);
  for (const State& s : rep.zeta.samples) {
    rep.energy_drift = std::max(rep.energy_drift, std::abs(energy(s, m) - h));
    Point g = center_of_mass(s.x, m);
    double dg = 0.0;
    for (std::size_t c = 0; c < g.size(); ++c) dg += (g[c] - g0[c]) * (g[c] - g0[c]);
    rep.com_drift = std::max(rep.com_drift, std::sqrt(dg));
  }
  if (rep.zeta.terminated_by != Termination::horizon)
    throw ExperimentError("integration of the limit motion stopped early (" + to_string(rep.zeta.terminated_by) +
                          " at t = " + std::to_string(rep.zeta.omega_plus) + ")");

  rep.classification = classify_motion(rep.zeta, windows, opts.classify);
  rep.b_prime = rep.classification.primary().a;
  if (rep.b_prime.size()) {
    Point g = center_of_mass(rep.b_prime, m);
    double s = 0.0;
    for (double v : g) s += v * v;
    rep.G_b_prime = std::sqrt(s);
    rep.energy_b_prime = 0.5 * mass_inner(rep.b_prime, rep.b_prime, m);
  }
  return rep;
}

ProbeTable continuity_probe_C(const ProbeFamily& f, const Masses& m, const Configuration& b) {
  if (f.params.empty()) throw InvalidArgument("continuity_probe_C: empty family");
  if (!f.v_base.same_shape(f.x0) || !f.v_dir.same_shape(f.x0) || f.x0.bodies() != m.size())
    throw InvalidArgument("continuity_probe_C: shape mismatch");
  if (b.size() && !b.same_shape(f.x0)) throw InvalidArgument("continuity_probe_C: b shape mismatch");
  require_omega(f.x0, "x0");

  ProbeTable table;
  for (double s : f.params) {
    ProbeRow row;
    row.s = s;
    try {
      TangentVector v = project_velocity(f.v_base + s * f.v_dir, f.x0, m, f.h);
      IntegrateOptions io;
      io.rtol = f.rtol;
      io.sample_times = window_sample_times({f.window}, 200, f.t_end);
      auto tr = integrate(State{f.x0, v, 0.0}, m, f.t_end, io);
      if (tr.terminated_by != Termination::horizon)
        throw ExperimentError("flow stopped early: " + to_string(tr.terminated_by));
      auto fit = fit_final_configuration(tr, f.window, f.model);
      row.a = fit.a;
      row.fit_residual = fit.fit_residual;
      row.energy_of_a = fit.energy_of_a;
      if (b.size()) row.distance_to_b = mass_norm(fit.a - b, m);
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    table.rows.push_back(std::move(row));
  }
  for (std::size_t k = 1; k < table.rows.size(); ++k) {
    const auto &r0 = table.rows[k - 1], &r1 = table.rows[k];
    if (!r0.ok || !r1.ok) continue;
    double jump = mass_norm(r1.a - r0.a, m);
    table.max_jump = std::max(table.max_jump, jump);
    double ds = std::abs(r1.s - r0.s);
    if (ds > 0.0) table.max_jump_per_step = std::max(table.max_jump_per_step, jump / ds);
  }
  return table;
}

}  // namespace nbvar
