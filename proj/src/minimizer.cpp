#include "nbvar/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace nbvar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Inverse of the kinetic part of the discrete action Hessian. In the mass
// metric that operator is tridiag(-1, 2, -1) / dt on interior nodes, the same
// for every coordinate, so one Thomas factorization serves all of them.
class KineticPreconditioner {
 public:
  explicit KineticPreconditioner(std::size_t n) : cp_(n), inv_denom_(n) {
    double prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double denom = 2.0 + prev;
      inv_denom_[i] = 1.0 / denom;
      cp_[i] = -inv_denom_[i];
      prev = cp_[i];
    }
  }

  // out = dt * T^{-1} q, columnwise over stride-s blocks.
  void apply(std::span<const double> q, std::span<double> out, std::size_t s, double dt) const {
    const std::size_t n = cp_.size();
    for (std::size_t c = 0; c < s; ++c) out[c] = q[c] * inv_denom_[0];
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t c = 0; c < s; ++c)
        out[i * s + c] = (q[i * s + c] + out[(i - 1) * s + c]) * inv_denom_[i];
    for (std::size_t i = n - 1; i-- > 0;)
      for (std::size_t c = 0; c < s; ++c) out[i * s + c] -= cp_[i] * out[(i + 1) * s + c];
    for (double& v : out) v *= dt;
  }

 private:
  std::vector<double> cp_, inv_denom_;
};

class History {
 public:
  History(std::size_t capacity, std::size_t n) : cap_(capacity), n_(n) {}

  std::size_t size() const { return count_; }
  void clear() { count_ = 0; }

  void push(std::span<const double> s, std::span<const double> y, double rho) {
    if (cap_ == 0) return;
    if (s_.size() < cap_) {
      s_.emplace_back(s.begin(), s.end());
      y_.emplace_back(y.begin(), y.end());
      rho_.push_back(rho);
      head_ = s_.size() - 1;
    } else {
      head_ = (head_ + 1) % cap_;
      std::copy(s.begin(), s.end(), s_[head_].begin());
      std::copy(y.begin(), y.end(), y_[head_].begin());
      rho_[head_] = rho;
    }
    count_ = std::min(count_ + 1, cap_);
  }

  // k = 0 is the newest pair.
  std::size_t slot(std::size_t k) const { return (head_ + s_.size() - k) % s_.size(); }
  const std::vector<double>& s(std::size_t k) const { return s_[slot(k)]; }
  const std::vector<double>& y(std::size_t k) const { return y_[slot(k)]; }
  double rho(std::size_t k) const { return rho_[slot(k)]; }

 private:
  std::size_t cap_, n_;
  std::size_t head_ = 0, count_ = 0;
  std::vector<std::vector<double>> s_, y_;
  std::vector<double> rho_;
};

double default_barrier(const MinimizeOptions& o, double scale) {
  return o.barrier_eps >= 0.0 ? o.barrier_eps : 1e-6 * scale;
}

double path_scale(const DiscretePath& p) {
  return endpoint_scale(p.front(), p.back(), p.masses());
}

// Preconditioned L-BFGS on the interior nodes of a fixed grid.
FixedTimeResult relax(DiscretePath path, const MinimizeOptions& o, double barrier) {
  FixedTimeResult res;
  const std::size_t K = path.intervals();
  const std::size_t s = path.stride();
  if (K < 2) {
    res.value = kernels::action(path.view());
    res.converged = std::isfinite(res.value);
    res.min_interior_distance = kInf;
    res.path = std::move(path);
    return res;
  }

  const std::size_t n = (K - 1) * s;
  const auto masses = path.masses().values();
  const std::size_t dim = path.dim();
  auto dot = [&](std::span<const double> a, std::span<const double> b) {
    return kernels::mass_dot(a, b, masses, dim);
  };

  std::vector<double> g(n), gt(n), d(n), q(n), step(n), dy(n);
  std::vector<double> alpha(static_cast<std::size_t>(std::max(o.memory, 0)));
  KineticPreconditioner precond(K - 1);
  History hist(static_cast<std::size_t>(std::max(o.memory, 0)), n);

  DiscretePath trial = path;
  auto ev = kernels::action_with_gradient(path.view(), g);
  double f = ev.value;
  double dmin = ev.min_interior_distance;
  double gnorm = std::sqrt(dot(g, g));

  if (!(dmin >= barrier) || !std::isfinite(f)) {
    res.path = std::move(path);
    res.value = f;
    res.grad_norm = gnorm;
    res.min_interior_distance = dmin;
    return res;
  }

  auto direction = [&]() {
    std::copy(g.begin(), g.end(), q.begin());
    for (std::size_t k = 0; k < hist.size(); ++k) {
      alpha[k] = hist.rho(k) * dot(hist.s(k), q);
      kernels::axpy(-alpha[k], hist.y(k), q);
    }
    precond.apply(q, d, s, path.dt());
    for (std::size_t k = hist.size(); k-- > 0;) {
      const double beta = hist.rho(k) * dot(hist.y(k), d);
      kernels::axpy(alpha[k] - beta, hist.s(k), d);
    }
    for (double& v : d) v = -v;
  };

  int it = 0;
  int noisy_steps = 0;
  while (it < o.max_iters) {
    if (gnorm <= o.grad_tol) {
      res.converged = true;
      break;
    }
    direction();
    double gd = dot(g, d);
    if (!(gd < 0.0)) {
      hist.clear();
      direction();
      gd = dot(g, d);
    }

    double a = 1.0;
    bool accepted = false, noisy = false;
    kernels::ActionEval evt{};
    const auto base = path.interior();
    auto tri = trial.interior();
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t k = 0; k < n; ++k) tri[k] = base[k] + a * d[k];
      evt = kernels::action_with_gradient(trial.view(), gt);
      if (!(evt.min_interior_distance >= barrier) || !std::isfinite(evt.value)) {
        a *= 0.5;
        continue;
      }
      if (evt.value <= f + 1e-4 * a * gd) {
        accepted = true;
        break;
      }
      // Near convergence the decrease drops below rounding noise in f; fall
      // back on the slope (approximate Wolfe conditions).
      if (evt.value <= f + 1e-12 * std::abs(f)) {
        const double gtd = dot(gt, d);
        if (gtd >= 0.9 * gd && gtd <= -0.8 * gd) {
          accepted = true;
          noisy = true;
          break;
        }
      }
      a *= 0.5;
    }
    if (!accepted) {
      if (hist.size() > 0) {
        hist.clear();
        ++it;
        continue;
      }
      break;  // stalled
    }
    noisy_steps = noisy ? noisy_steps + 1 : 0;

    for (std::size_t k = 0; k < n; ++k) {
      step[k] = a * d[k];
      dy[k] = gt[k] - g[k];
    }
    const double sy = dot(step, dy);
    if (sy > 1e-14 * std::sqrt(dot(step, step) * dot(dy, dy))) hist.push(step, dy, 1.0 / sy);

    std::swap(path, trial);
    std::swap(g, gt);
    f = evt.value;
    dmin = evt.min_interior_distance;
    gnorm = std::sqrt(dot(g, g));
    ++it;
    if (noisy_steps > 25) break;
  }
  if (!res.converged && gnorm <= o.grad_tol) res.converged = true;

  res.value = f;
  res.grad_norm = gnorm;
  res.min_interior_distance = dmin;
  res.iterations = it;
  res.path = std::move(path);
  return res;
}

void check_endpoints(const Configuration& x, const Configuration& y, const Masses& m) {
  if (!x.same_shape(y)) throw InvalidArgument("endpoint shapes differ");
  detail::check_masses(x.bodies(), m);
  if (!x.all_finite() || !y.all_finite()) throw InvalidArgument("endpoints must be finite");
  if (x.bodies() < 2) return;
  if (!(min_mutual_distance(x) > collision_threshold(x)) ||
      !(min_mutual_distance(y) > collision_threshold(y)))
    throw InvalidArgument("endpoint configuration has a collision");
}

// Straight path plus a smooth bump vanishing at both ends.
DiscretePath bumped(const DiscretePath& base, double amplitude, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, amplitude);
  const std::size_t s = base.stride();
  std::vector<double> w1(s), w2(s);
  for (auto& v : w1) v = normal(rng);
  for (auto& v : w2) v = 0.5 * normal(rng);
  DiscretePath p = base;
  const std::size_t K = p.intervals();
  for (std::size_t k = 1; k < K; ++k) {
    const double u = static_cast<double>(k) / static_cast<double>(K);
    const double b1 = std::sin(std::numbers::pi * u);
    const double b2 = std::sin(2.0 * std::numbers::pi * u);
    auto node = p.node_data(k);
    for (std::size_t c = 0; c < s; ++c) node[c] += b1 * w1[c] + b2 * w2[c];
  }
  return p;
}

bool better(const FixedTimeResult& a, const FixedTimeResult& b) {
  return a.value < b.value - 1e-10 * std::max(1.0, std::abs(b.value));
}

// Straight start plus randomized bumps, best local minimum on the given grid.
FixedTimeResult multistart(const Configuration& x, const Configuration& y, double tau,
                           std::size_t K, const Masses& m, const MinimizeOptions& o,
                           double barrier) {
  const double scale = endpoint_scale(x, y, m);
  const DiscretePath straight = DiscretePath::straight(x, y, tau, K, m);
  const int extra = x.dim() >= 2 ? std::max(o.multistart, 0) : 0;
  std::optional<FixedTimeResult> best;
  for (int start = 0; start <= extra; ++start) {
    DiscretePath init = start == 0 ? straight
                                   : bumped(straight, 0.15 * scale,
                                            o.seed * 1000003ULL + static_cast<std::uint64_t>(start));
    if (x.bodies() >= 2 && K >= 2 && kernels::scan_distance(init.view(), true).distance < barrier)
      continue;
    FixedTimeResult r = relax(std::move(init), o, barrier);
    if (!(r.min_interior_distance >= barrier)) continue;
    if (!best || better(r, *best)) best = std::move(r);
  }
  if (!best) throw ConstructionError("no collision-free initial path found");
  return std::move(*best);
}

}  // namespace

void MinimizeOptions::validate() const {
  if (k0 < 8) throw InvalidArgument("k0 must be at least 8");
  if (refinements < 0) throw InvalidArgument("refinements must be >= 0");
  if (!(grad_tol > 0.0)) throw InvalidArgument("grad_tol must be positive");
  if (max_iters < 1) throw InvalidArgument("max_iters must be positive");
  if (!(tau_tol > 0.0)) throw InvalidArgument("tau_tol must be positive");
  if (!(refine_window > 0.0)) throw InvalidArgument("refine_window must be positive");
}

DiscretePath refine(const DiscretePath& p) {
  const std::size_t K = p.intervals();
  const std::size_t s = p.stride();
  std::vector<double> x((2 * K + 1) * s);
  for (std::size_t k = 0; k <= K; ++k) {
    auto a = p.node_data(k);
    std::copy(a.begin(), a.end(), x.begin() + static_cast<std::ptrdiff_t>(2 * k * s));
    if (k < K) {
      auto b = p.node_data(k + 1);
      for (std::size_t c = 0; c < s; ++c) x[(2 * k + 1) * s + c] = 0.5 * (a[c] + b[c]);
    }
  }
  return DiscretePath(p.masses(), p.dim(), p.t0(), p.duration(), 2 * K, std::move(x));
}

CollisionCheck check_interior_collisionfree(const DiscretePath& p, double delta) {
  if (p.bodies() < 2 || p.intervals() < 2) return {true, kInf, 0, 0, 0};
  const auto scan = kernels::scan_distance(p.view(), true);
  return {scan.distance >= delta, scan.distance, scan.node, scan.i, scan.j};
}

FixedTimeResult relax_path(DiscretePath initial, const MinimizeOptions& opts) {
  const double barrier = default_barrier(opts, path_scale(initial));
  return relax(std::move(initial), opts, barrier);
}

FixedTimeResult minimize_fixed(const Configuration& x, const Configuration& y, double tau,
                               const Masses& m, const MinimizeOptions& opts) {
  opts.validate();
  check_endpoints(x, y, m);
  if (!(tau > 0.0)) throw InvalidArgument("duration must be positive");
  const double barrier = default_barrier(opts, endpoint_scale(x, y, m));
  FixedTimeResult best = multistart(x, y, tau, opts.k0, m, opts, barrier);
  for (int r = 0; r < opts.refinements; ++r) best = relax(refine(best.path), opts, barrier);
  return best;
}

std::pair<double, double> initial_tau_bracket(const Configuration& x, const Configuration& y,
                                              double h, const Masses& m) {
  const double ell = mass_norm(y - x, m);
  double umax = 0.0;
  if (x.bodies() >= 2) {
    constexpr int samples = 16;
    for (int k = 0; k <= samples; ++k) {
      const double f = static_cast<double>(k) / samples;
      Configuration z = (1.0 - f) * x + f * y;
      if (min_mutual_distance(z) > collision_threshold(z)) umax = std::max(umax, potential(z, m));
    }
  }
  return {ell / std::sqrt(2.0 * (h + umax)), 4.0 * ell / std::sqrt(2.0 * h)};
}

namespace {

struct TauSample {
  double log_tau = 0.0;
  double g = kInf;
  FixedTimeResult fit;
};

class DurationSearch {
 public:
  DurationSearch(double h, const MinimizeOptions& o, double barrier) : h_(h), o_(o), barrier_(barrier) {}

  TauSample eval(double log_tau, const DiscretePath& warm) {
    DiscretePath p = warm;
    p.set_duration(std::exp(log_tau));
    TauSample s{log_tau, kInf, relax(std::move(p), o_, barrier_)};
    if (s.fit.min_interior_distance >= barrier_ && std::isfinite(s.fit.value))
      s.g = s.fit.value + h_ * s.fit.path.duration();
    samples_.emplace_back(std::exp(log_tau), s.g);
    return s;
  }

  // Golden-section search started from a bracket candidate (a, b, c).
  TauSample search(TauSample a, TauSample b, TauSample c) {
    int expansions = 0;
    while (!(b.g < a.g && b.g < c.g)) {
      if (expansions++ >= o_.bracket_expansions)
        throw BracketError(std::exp(a.log_tau), std::exp(c.log_tau));
      if (a.g <= b.g && a.g <= c.g) {
        const double w = b.log_tau - a.log_tau;
        c = std::move(b);
        b = std::move(a);
        a = eval(b.log_tau - 2.0 * w, b.fit.path);
      } else if (c.g <= b.g) {
        const double w = c.log_tau - b.log_tau;
        a = std::move(b);
        b = std::move(c);
        c = eval(b.log_tau + 2.0 * w, b.fit.path);
      } else {
        break;  // b is lowest but tied with a neighbour; proceed
      }
    }
    constexpr double kGolden = 0.3819660112501051;
    while (c.log_tau - a.log_tau > o_.tau_tol) {
      const bool right = (c.log_tau - b.log_tau) > (b.log_tau - a.log_tau);
      const double u = right ? b.log_tau + kGolden * (c.log_tau - b.log_tau)
                             : b.log_tau - kGolden * (b.log_tau - a.log_tau);
      TauSample x = eval(u, b.fit.path);
      if (x.g < b.g) {
        if (right) a = std::move(b);
        else c = std::move(b);
        b = std::move(x);
      } else {
        if (right) c = std::move(x);
        else a = std::move(x);
      }
    }
    return b;
  }

  void note(const TauSample& s) { samples_.emplace_back(std::exp(s.log_tau), s.g); }
  void reset_samples() { samples_.clear(); }
  const std::vector<std::pair<double, double>>& samples() const { return samples_; }

 private:
  double h_;
  const MinimizeOptions& o_;
  double barrier_;
  std::vector<std::pair<double, double>> samples_;
};

}  // namespace

FreeTimeResult minimize_free_time(const Configuration& x, const Configuration& y, EnergyLevel h,
                                  const Masses& m, const MinimizeOptions& opts) {
  opts.validate();
  if (!(h.value() > 0.0)) throw DomainError("free-time minimization requires h > 0");
  check_endpoints(x, y, m);

  const double scale = endpoint_scale(x, y, m);
  const double barrier = default_barrier(opts, scale);
  const double ell = mass_norm(y - x, m);
  FreeTimeResult out;

  if (ell <= 1e-12 * scale) {
    // phi_h(x, x) = 0 is approached by constant paths of vanishing duration.
    const double u = x.bodies() >= 2 ? potential(x, m) : 0.0;
    const double tau = std::min(1e-6, 1e-5 / (u + h.value()));
    out.path = DiscretePath::constant(x, tau, opts.k0, m);
    out.tau_star = tau;
    out.value = action_supercritical(out.path, h);
    const auto e = path_energy_profile(out.path);
    double mean = 0.0;
    for (double v : e) mean += v;
    out.energy_residual = std::abs(mean / static_cast<double>(e.size()) - h.value());
    out.converged = true;
    out.degenerate = true;
    out.samples = {{tau, out.value}};
    return out;
  }

  auto [lo, hi] = initial_tau_bracket(x, y, h.value(), m);
  std::size_t k0 = opts.k0;
  if (opts.coarse_dt > 0.0)
    k0 = std::max(k0, static_cast<std::size_t>(std::ceil(ell / std::sqrt(2.0 * h.value()) / opts.coarse_dt)));

  DurationSearch search(h.value(), opts, barrier);
  const double log_lo = std::log(lo), log_hi = std::log(hi);
  const double log_mid = 0.5 * (log_lo + log_hi);

  FixedTimeResult first = multistart(x, y, std::exp(log_mid), k0, m, opts, barrier);
  TauSample b{log_mid, first.value + h.value() * first.path.duration(), std::move(first)};
  search.note(b);
  TauSample a = search.eval(log_lo, b.fit.path);
  TauSample c = search.eval(log_hi, b.fit.path);
  b = search.search(std::move(a), std::move(b), std::move(c));

  for (int r = 0; r < opts.refinements; ++r) {
    search.reset_samples();
    const double w = opts.refine_window;
    TauSample mid = search.eval(b.log_tau, refine(b.fit.path));
    TauSample left = search.eval(b.log_tau - w, mid.fit.path);
    TauSample right = search.eval(b.log_tau + w, mid.fit.path);
    b = search.search(std::move(left), std::move(mid), std::move(right));
  }

  out.samples = search.samples();
  out.tau_star = b.fit.path.duration();
  out.value = b.g;
  out.grad_norm = b.fit.grad_norm;
  const auto e = path_energy_profile(b.fit.path);
  double mean = 0.0;
  for (double v : e) mean += v;
  out.energy_residual = std::abs(mean / static_cast<double>(e.size()) - h.value());
  out.converged = b.fit.converged && out.energy_residual <= 1e-3;
  out.path = std::move(b.fit.path);
  return out;
}

}  // namespace nbvar
