#include "nbvar/flow.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace nbvar {

namespace {
constexpr double kLocalFactor = 1e-2;
}  // namespace

std::string to_string(Termination t) {
  switch (t) {
    case Termination::horizon: return "horizon";
    case Termination::collision_guard: return "collision_guard";
    case Termination::step_underflow: return "step_underflow";
    case Termination::energy_drift: return "energy_drift";
  }
  return "horizon";
}

Termination termination_from_string(const std::string& s) {
  if (s == "horizon") return Termination::horizon;
  if (s == "collision_guard") return Termination::collision_guard;
  if (s == "step_underflow") return Termination::step_underflow;
  if (s == "energy_drift") return Termination::energy_drift;
  throw InvalidArgument("unknown termination reason: " + s);
}

double energy(const State& s, const Masses& m) {
  const double u = s.x.bodies() >= 2 ? potential(s.x, m) : 0.0;
  return 0.5 * mass_inner(s.v, s.v, m) - u;
}

namespace {

// Dormand-Prince 5(4) coefficients and the matching 4th-order dense output.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

class NewtonRhs {
 public:
  NewtonRhs(const Masses& m, std::size_t n, std::size_t d) : m_(m), n_(n), d_(d) {}

  // y = [x, v], dy = [v, grad U(x)]
  void operator()(const std::vector<double>& y, std::vector<double>& dy) const {
    const std::size_t s = n_ * d_;
    std::copy(y.begin() + static_cast<std::ptrdiff_t>(s), y.end(), dy.begin());
    kernels::gradient_at(y.data(), m_.values().data(), n_, d_, dy.data() + s);
  }

 private:
  const Masses& m_;
  std::size_t n_, d_;
};

State unpack(const std::vector<double>& y, std::size_t n, std::size_t d, double t) {
  const std::size_t s = n * d;
  State st;
  st.x = Configuration(n, d, std::vector<double>(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(s)));
  st.v = TangentVector(n, d, std::vector<double>(y.begin() + static_cast<std::ptrdiff_t>(s), y.end()));
  st.t = t;
  return st;
}

double state_energy(const std::vector<double>& y, const Masses& m, std::size_t n, std::size_t d,
                    double* u_out = nullptr) {
  const std::size_t s = n * d;
  double kin = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < d; ++c) kin += m[i] * y[s + i * d + c] * y[s + i * d + c];
  const double u = n >= 2 ? kernels::potential_at(y.data(), m.values().data(), n, d) : 0.0;
  if (u_out) *u_out = u;
  return 0.5 * kin - u;
}

}  // namespace

Trajectory integrate(const State& s0, const Masses& m, double t_end, double rtol) {
  IntegrateOptions o;
  o.rtol = rtol;
  return integrate(s0, m, t_end, o);
}

Trajectory integrate(const State& s0, const Masses& m, double t_end, const IntegrateOptions& opts) {
  const std::size_t n = s0.x.bodies(), d = s0.x.dim(), s = n * d;
  detail::check_masses(n, m);
  if (!s0.v.same_shape(s0.x)) throw InvalidArgument("velocity shape does not match positions");
  if (!(t_end > s0.t)) throw InvalidArgument("t_end must exceed the initial time");
  if (!(opts.rtol > 0.0)) throw InvalidArgument("rtol must be positive");
  if (n >= 2 && !(min_mutual_distance(s0.x) > collision_threshold(s0.x)))
    throw InvalidArgument("initial configuration has a collision");
  for (std::size_t k = 0; k < opts.sample_times.size(); ++k) {
    const double ts = opts.sample_times[k];
    if (!(ts > s0.t) || ts > t_end || (k > 0 && !(ts > opts.sample_times[k - 1])))
      throw InvalidArgument("sample times must be increasing and inside (t0, t_end]");
  }

  // Per-step tolerances sit two decades below the requested ones so that the
  // accumulated error over O(1e3) steps stays near rtol.
  const double rtol = kLocalFactor * opts.rtol;
  const double atol = kLocalFactor * (opts.atol >= 0.0 ? opts.atol : opts.rtol);
  const double drift_tol = opts.drift_tol >= 0.0 ? opts.drift_tol : std::max(1e-6, 1e3 * opts.rtol);
  const double guard = opts.guard_factor * diameter(s0.x);
  const double t0 = s0.t;
  const double tspan = t_end - t0;

  Trajectory tr;
  tr.masses = m;
  tr.samples.push_back(s0);

  std::vector<double> y(2 * s), ynew(2 * s), ytmp(2 * s);
  std::copy(s0.x.data().begin(), s0.x.data().end(), y.begin());
  std::copy(s0.v.data().begin(), s0.v.data().end(), y.begin() + static_cast<std::ptrdiff_t>(s));

  double u0 = 0.0;
  const double e0 = state_energy(y, m, n, d, &u0);
  tr.h = e0;
  const double kin0 = e0 + u0;
  double escale = std::abs(e0) > 1e-3 * (kin0 + u0) ? std::abs(e0) : kin0 + u0;
  if (!(escale > 0.0)) escale = 1.0;

  NewtonRhs rhs(m, n, d);
  std::array<std::vector<double>, 7> k;
  for (auto& v : k) v.assign(2 * s, 0.0);
  rhs(y, k[0]);

  auto err_scale = [&](double a, double b) {
    return atol + rtol * std::max(std::abs(a), std::abs(b));
  };

  // Initial step (Hairer-Norsett-Wanner heuristic).
  double h;
  {
    double dn0 = 0.0, dn1 = 0.0;
    for (std::size_t i = 0; i < 2 * s; ++i) {
      const double sc = err_scale(y[i], y[i]);
      dn0 += (y[i] / sc) * (y[i] / sc);
      dn1 += (k[0][i] / sc) * (k[0][i] / sc);
    }
    dn0 = std::sqrt(dn0 / static_cast<double>(2 * s));
    dn1 = std::sqrt(dn1 / static_cast<double>(2 * s));
    double h0 = (dn0 < 1e-5 || dn1 < 1e-5) ? 1e-6 : 0.01 * dn0 / dn1;
    h0 = std::min(h0, tspan);
    for (std::size_t i = 0; i < 2 * s; ++i) ytmp[i] = y[i] + h0 * k[0][i];
    rhs(ytmp, k[1]);
    double dn2 = 0.0;
    for (std::size_t i = 0; i < 2 * s; ++i) {
      const double sc = err_scale(y[i], y[i]);
      const double v = (k[1][i] - k[0][i]) / sc;
      dn2 += v * v;
    }
    dn2 = std::sqrt(dn2 / static_cast<double>(2 * s)) / h0;
    const double h1 = std::max(dn1, dn2) <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                                  : std::pow(0.01 / std::max(dn1, dn2), 1.0 / 5.0);
    h = std::min({100.0 * h0, h1, tspan});
  }

  std::size_t next_sample = 0;
  const bool every_step = opts.sample_times.empty();
  std::array<std::vector<double>, 5> rc;
  for (auto& v : rc) v.assign(2 * s, 0.0);

  double t = t0;
  bool done = false;
  while (!done) {
    if (tr.accepted_steps + tr.rejected_steps >= opts.max_steps) {
      tr.terminated_by = Termination::step_underflow;
      tr.omega_plus = t;
      break;
    }
    const bool last = t + h >= t_end;
    if (last) h = t_end - t;
    if (h < 1e-14 * std::max(std::abs(t), tspan)) {
      tr.terminated_by = Termination::step_underflow;
      tr.omega_plus = t;
      break;
    }

    for (std::size_t i = 0; i < 2 * s; ++i) ytmp[i] = y[i] + h * a21 * k[0][i];
    rhs(ytmp, k[1]);
    for (std::size_t i = 0; i < 2 * s; ++i) ytmp[i] = y[i] + h * (a31 * k[0][i] + a32 * k[1][i]);
    rhs(ytmp, k[2]);
    for (std::size_t i = 0; i < 2 * s; ++i)
      ytmp[i] = y[i] + h * (a41 * k[0][i] + a42 * k[1][i] + a43 * k[2][i]);
    rhs(ytmp, k[3]);
    for (std::size_t i = 0; i < 2 * s; ++i)
      ytmp[i] = y[i] + h * (a51 * k[0][i] + a52 * k[1][i] + a53 * k[2][i] + a54 * k[3][i]);
    rhs(ytmp, k[4]);
    for (std::size_t i = 0; i < 2 * s; ++i)
      ytmp[i] = y[i] + h * (a61 * k[0][i] + a62 * k[1][i] + a63 * k[2][i] + a64 * k[3][i] + a65 * k[4][i]);
    rhs(ytmp, k[5]);
    for (std::size_t i = 0; i < 2 * s; ++i)
      ynew[i] = y[i] + h * (a71 * k[0][i] + a73 * k[2][i] + a74 * k[3][i] + a75 * k[4][i] + a76 * k[5][i]);
    rhs(ynew, k[6]);

    double err = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < 2 * s; ++i) {
      const double e = h * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] + e6 * k[5][i] +
                            e7 * k[6][i]);
      const double r = e / err_scale(y[i], ynew[i]);
      err += r * r;
      finite = finite && std::isfinite(ynew[i]);
    }
    err = finite ? std::sqrt(err / static_cast<double>(2 * s)) : std::numeric_limits<double>::infinity();

    if (!(err <= 1.0)) {
      ++tr.rejected_steps;
      const double fac = std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
      h *= fac;
      continue;
    }

    // Accepted.
    ++tr.accepted_steps;
    const double t_new = last ? t_end : t + h;

    if (!every_step) {
      while (next_sample < opts.sample_times.size() && opts.sample_times[next_sample] <= t_new) {
        for (std::size_t i = 0; i < 2 * s; ++i) {
          const double dy = ynew[i] - y[i];
          rc[0][i] = y[i];
          rc[1][i] = dy;
          rc[2][i] = h * k[0][i] - dy;
          rc[3][i] = dy - h * k[6][i] - rc[2][i];
          rc[4][i] = h * (d1 * k[0][i] + d3 * k[2][i] + d4 * k[3][i] + d5 * k[4][i] + d6 * k[5][i] +
                          d7 * k[6][i]);
        }
        const double ts = opts.sample_times[next_sample];
        const double th = (ts - t) / h;
        const double th1 = 1.0 - th;
        for (std::size_t i = 0; i < 2 * s; ++i)
          ytmp[i] = rc[0][i] + th * (rc[1][i] + th1 * (rc[2][i] + th * (rc[3][i] + th1 * rc[4][i])));
        if (ts == t_new) ytmp = ynew;
        tr.samples.push_back(unpack(ytmp, n, d, ts));
        ++next_sample;
      }
    }

    y.swap(ynew);
    std::swap(k[0], k[6]);
    t = t_new;
    if (every_step) tr.samples.push_back(unpack(y, n, d, t));

    double u = 0.0;
    const double e = state_energy(y, m, n, d, &u);
    const double drift = std::abs(e - e0);
    tr.max_energy_drift = std::max(tr.max_energy_drift, drift / escale);

    if (last) {
      done = true;
      tr.terminated_by = Termination::horizon;
      tr.omega_plus = std::numeric_limits<double>::infinity();
      break;
    }
    if (n >= 2 && kernels::min_pair_distance(y.data(), n, d).distance < guard) {
      tr.terminated_by = Termination::collision_guard;
      tr.omega_plus = t;
      break;
    }
    if (drift > drift_tol * std::max(escale, u)) {
      tr.terminated_by = Termination::energy_drift;
      tr.omega_plus = t;
      break;
    }

    const double fac = err > 0.0 ? std::min(10.0, std::max(0.2, 0.9 * std::pow(err, -0.2))) : 10.0;
    h *= fac;
  }

  if (tr.samples.back().t < t) tr.samples.push_back(unpack(y, n, d, t));
  return tr;
}

TangentVector initial_velocity(const DiscretePath& p) {
  if (p.intervals() < 4) throw InvalidArgument("initial_velocity needs at least 4 intervals");
  TangentVector v(p.bodies(), p.dim());
  const double inv = 1.0 / (12.0 * p.dt());
  auto x0 = p.node_data(0), x1 = p.node_data(1), x2 = p.node_data(2), x3 = p.node_data(3),
       x4 = p.node_data(4);
  for (std::size_t c = 0; c < p.stride(); ++c)
    v.data()[c] = (-25.0 * x0[c] + 48.0 * x1[c] - 36.0 * x2[c] + 16.0 * x3[c] - 3.0 * x4[c]) * inv;
  return v;
}

double shoot_and_compare(const DiscretePath& p, double rtol) {
  State s0{p.front(), initial_velocity(p), p.t0()};
  const Trajectory tr = integrate(s0, p.masses(), p.t0() + p.duration(), rtol);
  if (tr.terminated_by != Termination::horizon) return std::numeric_limits<double>::infinity();
  const Configuration diff = tr.samples.back().x - p.back();
  return mass_norm(diff, p.masses()) / endpoint_scale(p.front(), p.back(), p.masses());
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k)
    out[k] = n == 1 ? a : a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1);
  if (n > 1) out.back() = b;
  return out;
}

std::vector<double> logspace(double a, double b, std::size_t n) {
  auto out = linspace(std::log(a), std::log(b), n);
  for (double& v : out) v = std::exp(v);
  if (n > 0) out.front() = a;
  if (n > 1) out.back() = b;
  return out;
}

}  // namespace nbvar
