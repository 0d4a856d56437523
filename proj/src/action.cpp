#include "nbvar/action.hpp"

#include <algorithm>
#include <cmath>

namespace nbvar {

EnergyLevel::EnergyLevel(double h) : h_(h) {
  if (!(h >= 0.0) || !std::isfinite(h)) throw DomainError("energy level must be finite and >= 0");
}

namespace {

std::vector<double> uniform_times(double t0, double duration, std::size_t intervals) {
  std::vector<double> t(intervals + 1);
  const double dt = duration / static_cast<double>(intervals);
  for (std::size_t k = 0; k <= intervals; ++k) t[k] = t0 + dt * static_cast<double>(k);
  t.back() = t0 + duration;
  return t;
}

}  // namespace

DiscretePath::DiscretePath(Masses m, std::size_t dim, double t0, double duration,
                           std::size_t intervals, std::vector<double> nodes)
    : m_(std::move(m)), d_(dim), x_(std::move(nodes)) {
  if (intervals < 1) throw InvalidArgument("a path needs at least one interval");
  if (!(duration > 0.0)) throw InvalidArgument("path duration must be positive");
  if (dim < 1) throw InvalidArgument("dimension must be at least 1");
  if (x_.size() != (intervals + 1) * stride()) throw InvalidArgument("node data has wrong size");
  times_ = uniform_times(t0, duration, intervals);
}

DiscretePath::DiscretePath(Masses m, std::size_t dim, std::vector<double> times,
                           std::vector<double> nodes)
    : m_(std::move(m)), d_(dim), times_(std::move(times)), x_(std::move(nodes)) {
  if (times_.size() < 2) throw InvalidArgument("a path needs at least one interval");
  if (dim < 1) throw InvalidArgument("dimension must be at least 1");
  if (x_.size() != times_.size() * stride()) throw InvalidArgument("node data has wrong size");
  const double h = dt();
  if (!(h > 0.0)) throw InvalidArgument("time stamps must be strictly increasing");
  for (std::size_t k = 1; k < times_.size(); ++k) {
    const double step = times_[k] - times_[k - 1];
    if (std::abs(step - h) > 1e-9 * std::max({std::abs(times_.front()), std::abs(times_.back()), h}))
      throw InvalidArgument("time grid is not uniform");
  }
}

DiscretePath DiscretePath::straight(const Configuration& x, const Configuration& y,
                                    double duration, std::size_t intervals, const Masses& m,
                                    double t0) {
  if (!x.same_shape(y)) throw InvalidArgument("endpoint shapes differ");
  detail::check_masses(x.bodies(), m);
  const std::size_t s = x.size();
  std::vector<double> nodes((intervals + 1) * s);
  for (std::size_t k = 0; k <= intervals; ++k) {
    const double f = static_cast<double>(k) / static_cast<double>(intervals);
    for (std::size_t c = 0; c < s; ++c) nodes[k * s + c] = (1.0 - f) * x.data()[c] + f * y.data()[c];
  }
  // Endpoints exactly as given.
  std::copy(x.data().begin(), x.data().end(), nodes.begin());
  std::copy(y.data().begin(), y.data().end(), nodes.begin() + static_cast<std::ptrdiff_t>(intervals * s));
  return DiscretePath(m, x.dim(), t0, duration, intervals, std::move(nodes));
}

DiscretePath DiscretePath::constant(const Configuration& x, double duration, std::size_t intervals,
                                    const Masses& m, double t0) {
  return straight(x, x, duration, intervals, m, t0);
}

Configuration DiscretePath::node(std::size_t k) const {
  auto s = node_data(k);
  return Configuration(bodies(), d_, std::vector<double>(s.begin(), s.end()));
}

void DiscretePath::set_duration(double duration) {
  if (!(duration > 0.0)) throw InvalidArgument("path duration must be positive");
  times_ = uniform_times(t0(), duration, intervals());
}

DiscretePath DiscretePath::slice(std::size_t first, std::size_t last) const {
  if (!(first < last) || last > intervals()) throw InvalidArgument("bad slice bounds");
  std::vector<double> t(times_.begin() + static_cast<std::ptrdiff_t>(first),
                        times_.begin() + static_cast<std::ptrdiff_t>(last + 1));
  std::vector<double> x(x_.begin() + static_cast<std::ptrdiff_t>(first * stride()),
                        x_.begin() + static_cast<std::ptrdiff_t>((last + 1) * stride()));
  return DiscretePath(m_, d_, std::move(t), std::move(x));
}

DiscretePath DiscretePath::reversed() const {
  std::vector<double> x(x_.size());
  const std::size_t K = intervals();
  for (std::size_t k = 0; k <= K; ++k) {
    auto src = node_data(K - k);
    std::copy(src.begin(), src.end(), x.begin() + static_cast<std::ptrdiff_t>(k * stride()));
  }
  return DiscretePath(m_, d_, t0(), duration(), K, std::move(x));
}

kernels::PathData DiscretePath::view() const {
  return {x_, m_.values(), bodies(), d_, intervals(), dt()};
}

void require_collisionless(const DiscretePath& p, bool interior_only) {
  if (p.bodies() < 2 || (interior_only && p.intervals() < 2)) return;
  const auto scan = kernels::scan_distance(p.view(), interior_only);
  const double threshold =
      1e-12 * std::max(diameter(p.front()), diameter(p.back()));
  if (!(scan.distance > threshold)) throw CollisionError(scan.i, scan.j, scan.node);
}

double action_fixed_time(const DiscretePath& p) {
  require_collisionless(p);
  return kernels::action(p.view());
}

double action_supercritical(const DiscretePath& p, EnergyLevel h) {
  return action_fixed_time(p) + h.value() * p.duration();
}

std::vector<TangentVector> action_gradient(const DiscretePath& p) {
  require_collisionless(p);
  const std::size_t K = p.intervals();
  if (K < 2) return {};
  std::vector<double> flat((K - 1) * p.stride());
  kernels::action_with_gradient(p.view(), flat);
  std::vector<TangentVector> out;
  out.reserve(K - 1);
  for (std::size_t k = 0; k + 1 < K; ++k)
    out.emplace_back(p.bodies(), p.dim(),
                     std::vector<double>(flat.begin() + static_cast<std::ptrdiff_t>(k * p.stride()),
                                         flat.begin() + static_cast<std::ptrdiff_t>((k + 1) * p.stride())));
  return out;
}

double jm_length(const DiscretePath& p, EnergyLevel h) {
  require_collisionless(p);
  return kernels::jm_length(p.view(), h.value());
}

std::vector<double> path_energy_profile(const DiscretePath& p) {
  require_collisionless(p);
  std::vector<double> e(p.intervals());
  kernels::energy_profile(p.view(), e);
  return e;
}

}  // namespace nbvar
