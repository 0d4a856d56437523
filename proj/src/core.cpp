#include "nbvar/core.hpp"

#include <algorithm>
#include <limits>

#include "nbvar/kernels.hpp"

namespace nbvar {

Masses::Masses(std::vector<double> m) : m_(std::move(m)) {
  if (m_.empty()) throw InvalidArgument("at least one mass is required");
  for (double mi : m_) {
    if (!(mi > 0.0) || !std::isfinite(mi)) throw InvalidArgument("masses must be positive and finite");
    total_ += mi;
  }
}

namespace detail {

double mass_inner(std::span<const double> x, std::span<const double> y, const Masses& m,
                  std::size_t dim) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    double dot = 0.0;
    for (std::size_t c = 0; c < dim; ++c) dot += x[i * dim + c] * y[i * dim + c];
    s += m[i] * dot;
  }
  return s;
}

void check_masses(std::size_t bodies, const Masses& m) {
  if (m.size() != bodies) throw InvalidArgument("number of masses does not match number of bodies");
}

}  // namespace detail

double min_mutual_distance(const Configuration& x) {
  return kernels::min_pair_distance(x.data().data(), x.bodies(), x.dim()).distance;
}

double diameter(const Configuration& x) {
  double best = 0.0;
  for (std::size_t i = 0; i < x.bodies(); ++i)
    for (std::size_t j = i + 1; j < x.bodies(); ++j) {
      double r2 = 0.0;
      for (std::size_t c = 0; c < x.dim(); ++c) {
        const double dx = x(i, c) - x(j, c);
        r2 += dx * dx;
      }
      best = std::max(best, r2);
    }
  return std::sqrt(best);
}

double collision_threshold(const Configuration& x) { return 1e-12 * diameter(x); }

namespace {

void require_collisionless(const Configuration& x) {
  const auto scan = kernels::min_pair_distance(x.data().data(), x.bodies(), x.dim());
  if (x.bodies() >= 2 && !(scan.distance > collision_threshold(x)))
    throw CollisionError(scan.i, scan.j);
}

}  // namespace

double potential(const Configuration& x, const Masses& m) {
  detail::check_masses(x.bodies(), m);
  require_collisionless(x);
  return kernels::potential_at(x.data().data(), m.values().data(), x.bodies(), x.dim());
}

TangentVector potential_gradient(const Configuration& x, const Masses& m) {
  detail::check_masses(x.bodies(), m);
  require_collisionless(x);
  TangentVector g(x.bodies(), x.dim());
  kernels::gradient_at(x.data().data(), m.values().data(), x.bodies(), x.dim(), g.data().data());
  return g;
}

Point center_of_mass(const Configuration& x, const Masses& m) {
  detail::check_masses(x.bodies(), m);
  Point g(x.dim(), 0.0);
  for (std::size_t i = 0; i < x.bodies(); ++i)
    for (std::size_t c = 0; c < x.dim(); ++c) g[c] += m[i] * x(i, c);
  return g;
}

Point barycenter(const Configuration& x, const Masses& m) {
  Point g = center_of_mass(x, m);
  for (double& v : g) v /= m.total();
  return g;
}

double lagrangian(const Configuration& x, const TangentVector& v, const Masses& m) {
  return 0.5 * mass_inner(v, v, m) + potential(x, m);
}

Configuration translated(Configuration x, std::span<const double> c) {
  if (c.size() != x.dim()) throw InvalidArgument("translation has wrong dimension");
  for (std::size_t i = 0; i < x.bodies(); ++i)
    for (std::size_t k = 0; k < x.dim(); ++k) x(i, k) += c[k];
  return x;
}

double endpoint_scale(const Configuration& x, const Configuration& y, const Masses& m) {
  const double s = std::max({mass_norm(y - x, m), diameter(x), diameter(y)});
  return s > 0.0 ? s : 1.0;
}

}  // namespace nbvar
