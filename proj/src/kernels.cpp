#include "nbvar/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace nbvar::kernels {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline double squared_distance(const double* a, const double* b, std::size_t d) {
  double r2 = 0.0;
  for (std::size_t c = 0; c < d; ++c) {
    const double dx = a[c] - b[c];
    r2 += dx * dx;
  }
  return r2;
}

inline double mass_sq(const double* a, const double* b, const double* m, std::size_t n,
                      std::size_t d) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += m[i] * squared_distance(a + i * d, b + i * d, d);
  return s;
}

inline double min_distance_at(const double* x, std::size_t n, std::size_t d) {
  double best = kInf;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) best = std::min(best, squared_distance(x + i * d, x + j * d, d));
  return std::sqrt(best);
}

// Potential and gradient in one pass over pairs; grad may be null.
inline double potential_and_gradient(const double* x, const double* m, std::size_t n,
                                     std::size_t d, double* grad) {
  if (grad)
    for (std::size_t k = 0; k < n * d; ++k) grad[k] = 0.0;
  double u = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r2 = squared_distance(x + i * d, x + j * d, d);
      const double inv_r = 1.0 / std::sqrt(r2);
      u += m[i] * m[j] * inv_r;
      if (grad) {
        const double inv_r3 = inv_r * inv_r * inv_r;
        for (std::size_t c = 0; c < d; ++c) {
          const double f = (x[j * d + c] - x[i * d + c]) * inv_r3;
          grad[i * d + c] += m[j] * f;
          grad[j * d + c] -= m[i] * f;
        }
      }
    }
  }
  return u;
}

inline double node_weight(std::size_t k, std::size_t K) { return (k == 0 || k == K) ? 0.5 : 1.0; }

// Interior gradient at node k (1 <= k <= K-1), written into g.
inline void interior_gradient(const PathData& p, std::size_t k, double* g) {
  const std::size_t s = p.stride();
  const double* xm = p.node(k - 1);
  const double* x = p.node(k);
  const double* xp = p.node(k + 1);
  potential_and_gradient(x, p.masses.data(), p.bodies, p.dim, g);
  const double inv_dt = 1.0 / p.dt;
  for (std::size_t c = 0; c < s; ++c) g[c] = (2.0 * x[c] - xm[c] - xp[c]) * inv_dt + p.dt * g[c];
}

}  // namespace

PairScan min_pair_distance(const double* x, std::size_t n, std::size_t d) {
  PairScan best{kInf, 0, 0};
  double best2 = kInf;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r2 = squared_distance(x + i * d, x + j * d, d);
      if (r2 < best2) {
        best2 = r2;
        best = {0.0, i, j};
      }
    }
  best.distance = std::sqrt(best2);
  return best;
}

double potential_at(const double* x, const double* m, std::size_t n, std::size_t d) {
  return potential_and_gradient(x, m, n, d, nullptr);
}

void gradient_at(const double* x, const double* m, std::size_t n, std::size_t d, double* out) {
  potential_and_gradient(x, m, n, d, out);
}

int max_threads() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// ---------------------------------------------------------------------------
// OpenMP sweeps

double action(const PathData& p) {
  const auto K = static_cast<std::int64_t>(p.intervals);
  const double* m = p.masses.data();
  double kinetic = 0.0, pot = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : kinetic, pot)
  for (std::int64_t k = 0; k <= K; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    pot += node_weight(ku, p.intervals) * potential_at(p.node(ku), m, p.bodies, p.dim);
    if (k < K) kinetic += mass_sq(p.node(ku + 1), p.node(ku), m, p.bodies, p.dim);
  }
  return kinetic / (2.0 * p.dt) + p.dt * pot;
}

ActionEval action_with_gradient(const PathData& p, std::span<double> grad) {
  const auto K = static_cast<std::int64_t>(p.intervals);
  const std::size_t s = p.stride();
  const double* m = p.masses.data();
  double kinetic = 0.0, pot = 0.0, dmin = kInf;
#pragma omp parallel for schedule(static) reduction(+ : kinetic, pot) reduction(min : dmin)
  for (std::int64_t k = 0; k <= K; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    if (k > 0 && k < K) {
      double* g = grad.data() + (ku - 1) * s;
      const double u = potential_and_gradient(p.node(ku), m, p.bodies, p.dim, g);
      pot += u;
      const double* xm = p.node(ku - 1);
      const double* x = p.node(ku);
      const double* xp = p.node(ku + 1);
      for (std::size_t c = 0; c < s; ++c) g[c] = (2.0 * x[c] - xm[c] - xp[c]) / p.dt + p.dt * g[c];
      dmin = std::min(dmin, min_distance_at(x, p.bodies, p.dim));
    } else {
      pot += 0.5 * potential_at(p.node(ku), m, p.bodies, p.dim);
    }
    if (k < K) kinetic += mass_sq(p.node(ku + 1), p.node(ku), m, p.bodies, p.dim);
  }
  return {kinetic / (2.0 * p.dt) + p.dt * pot, dmin};
}

NodeScan scan_distance(const PathData& p, bool interior_only) {
  const auto K = static_cast<std::int64_t>(p.intervals);
  const std::int64_t first = interior_only ? 1 : 0;
  const std::int64_t last = interior_only ? K - 1 : K;
  // Parallel min over nodes, then a serial pass to recover the argmin.
  double dmin = kInf;
#pragma omp parallel for schedule(static) reduction(min : dmin)
  for (std::int64_t k = first; k <= last; ++k)
    dmin = std::min(dmin, min_distance_at(p.node(static_cast<std::size_t>(k)), p.bodies, p.dim));
  NodeScan out{dmin, 0, 0, 0};
  if (!std::isfinite(dmin)) return out;
  for (std::int64_t k = first; k <= last; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const auto pair = min_pair_distance(p.node(ku), p.bodies, p.dim);
    if (pair.distance == dmin) {
      out.node = ku;
      out.i = pair.i;
      out.j = pair.j;
      break;
    }
  }
  return out;
}

double jm_length(const PathData& p, double h) {
  const auto K = static_cast<std::int64_t>(p.intervals);
  const double* m = p.masses.data();
  double len = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : len)
  for (std::int64_t k = 0; k < K; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const double u = 0.5 * (potential_at(p.node(ku), m, p.bodies, p.dim) +
                            potential_at(p.node(ku + 1), m, p.bodies, p.dim));
    len += std::sqrt(2.0 * (h + u) * mass_sq(p.node(ku + 1), p.node(ku), m, p.bodies, p.dim));
  }
  return len;
}

void energy_profile(const PathData& p, std::span<double> out) {
  const auto K = static_cast<std::int64_t>(p.intervals);
  const std::size_t s = p.stride();
  const double* m = p.masses.data();
#pragma omp parallel
  {
    std::vector<double> mid(s);
#pragma omp for schedule(static)
    for (std::int64_t k = 0; k < K; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      const double* a = p.node(ku);
      const double* b = p.node(ku + 1);
      for (std::size_t c = 0; c < s; ++c) mid[c] = 0.5 * (a[c] + b[c]);
      out[ku] = mass_sq(b, a, m, p.bodies, p.dim) / (2.0 * p.dt * p.dt) -
                potential_at(mid.data(), m, p.bodies, p.dim);
    }
  }
}

double mass_dot(std::span<const double> a, std::span<const double> b, std::span<const double> m,
                std::size_t dim) {
  const std::size_t s = m.size() * dim;
  const auto blocks = static_cast<std::int64_t>(a.size() / s);
  double acc = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : acc)
  for (std::int64_t k = 0; k < blocks; ++k) {
    const double* x = a.data() + static_cast<std::size_t>(k) * s;
    const double* y = b.data() + static_cast<std::size_t>(k) * s;
    for (std::size_t i = 0; i < m.size(); ++i) {
      double dot = 0.0;
      for (std::size_t c = 0; c < dim; ++c) dot += x[i * dim + c] * y[i * dim + c];
      acc += m[i] * dot;
    }
  }
  return acc;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const auto n = static_cast<std::int64_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < n; ++k) y[static_cast<std::size_t>(k)] += alpha * x[static_cast<std::size_t>(k)];
}

// ---------------------------------------------------------------------------
// Serial reference

namespace serial {

double action(const PathData& p) {
  const double* m = p.masses.data();
  double kinetic = 0.0, pot = 0.0;
  for (std::size_t k = 0; k < p.intervals; ++k)
    kinetic += mass_sq(p.node(k + 1), p.node(k), m, p.bodies, p.dim);
  for (std::size_t k = 0; k <= p.intervals; ++k)
    pot += node_weight(k, p.intervals) * potential_at(p.node(k), m, p.bodies, p.dim);
  return kinetic / (2.0 * p.dt) + p.dt * pot;
}

ActionEval action_with_gradient(const PathData& p, std::span<double> grad) {
  double dmin = kInf;
  for (std::size_t k = 1; k < p.intervals; ++k) {
    interior_gradient(p, k, grad.data() + (k - 1) * p.stride());
    dmin = std::min(dmin, min_distance_at(p.node(k), p.bodies, p.dim));
  }
  return {serial::action(p), dmin};
}

NodeScan scan_distance(const PathData& p, bool interior_only) {
  NodeScan best{kInf, 0, 0, 0};
  const std::size_t first = interior_only ? 1 : 0;
  const std::size_t last = interior_only ? p.intervals - 1 : p.intervals;
  for (std::size_t k = first; k <= last && k <= p.intervals; ++k) {
    const auto pair = min_pair_distance(p.node(k), p.bodies, p.dim);
    if (pair.distance < best.distance) best = {pair.distance, k, pair.i, pair.j};
  }
  return best;
}

double jm_length(const PathData& p, double h) {
  const double* m = p.masses.data();
  double len = 0.0;
  for (std::size_t k = 0; k < p.intervals; ++k) {
    const double u = 0.5 * (potential_at(p.node(k), m, p.bodies, p.dim) +
                            potential_at(p.node(k + 1), m, p.bodies, p.dim));
    len += std::sqrt(2.0 * (h + u)) * std::sqrt(mass_sq(p.node(k + 1), p.node(k), m, p.bodies, p.dim));
  }
  return len;
}

void energy_profile(const PathData& p, std::span<double> out) {
  const std::size_t s = p.stride();
  std::vector<double> mid(s);
  for (std::size_t k = 0; k < p.intervals; ++k) {
    for (std::size_t c = 0; c < s; ++c) mid[c] = 0.5 * (p.node(k)[c] + p.node(k + 1)[c]);
    const double v2 = mass_sq(p.node(k + 1), p.node(k), p.masses.data(), p.bodies, p.dim) / (p.dt * p.dt);
    out[k] = 0.5 * v2 - potential_at(mid.data(), p.masses.data(), p.bodies, p.dim);
  }
}

double mass_dot(std::span<const double> a, std::span<const double> b, std::span<const double> m,
                std::size_t dim) {
  double acc = 0.0;
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < a.size(); ++k) acc += m[(k / dim) % n] * a[k] * b[k];
  return acc;
}

}  // namespace serial

}  // namespace nbvar::kernels
