#pragma once

// Configuration-space geometry for the Newtonian N-body problem with G = 1.
//
// Everything is measured in the mass metric <x, y> = sum_i m_i <x_i, y_i>, in
// which Newton's equations read  x'' = grad U(x)  with
//     U(x) = sum_{i<j} m_i m_j / |x_i - x_j|.

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "nbvar/errors.hpp"

namespace nbvar {

class Masses {
 public:
  Masses() = default;
  explicit Masses(std::vector<double> m);
  Masses(std::initializer_list<double> m) : Masses(std::vector<double>(m)) {}

  std::size_t size() const noexcept { return m_.size(); }
  double operator[](std::size_t i) const { return m_[i]; }
  double total() const noexcept { return total_; }
  std::span<const double> values() const noexcept { return m_; }

  friend bool operator==(const Masses&, const Masses&) = default;

 private:
  std::vector<double> m_;
  double total_ = 0.0;
};

/// N x d row-major matrix of per-body vectors. The tag keeps positions and
/// velocities apart at the type level.
template <class Tag>
class BodyMatrix {
 public:
  BodyMatrix() = default;
  BodyMatrix(std::size_t bodies, std::size_t dim) : n_(bodies), d_(dim), x_(bodies * dim, 0.0) {}
  BodyMatrix(std::size_t bodies, std::size_t dim, std::vector<double> data)
      : n_(bodies), d_(dim), x_(std::move(data)) {
    if (x_.size() != n_ * d_) throw InvalidArgument("body matrix data does not match N x d");
  }
  /// Nested initializer: {{x1, y1}, {x2, y2}, ...}.
  BodyMatrix(std::initializer_list<std::initializer_list<double>> rows) {
    n_ = rows.size();
    d_ = n_ ? rows.begin()->size() : 0;
    x_.reserve(n_ * d_);
    for (const auto& r : rows) {
      if (r.size() != d_) throw InvalidArgument("ragged body matrix");
      x_.insert(x_.end(), r.begin(), r.end());
    }
  }

  std::size_t bodies() const noexcept { return n_; }
  std::size_t dim() const noexcept { return d_; }
  std::size_t size() const noexcept { return x_.size(); }

  double& operator()(std::size_t i, std::size_t c) { return x_[i * d_ + c]; }
  double operator()(std::size_t i, std::size_t c) const { return x_[i * d_ + c]; }

  std::span<double> body(std::size_t i) { return {x_.data() + i * d_, d_}; }
  std::span<const double> body(std::size_t i) const { return {x_.data() + i * d_, d_}; }

  std::span<double> data() noexcept { return x_; }
  std::span<const double> data() const noexcept { return x_; }
  const std::vector<double>& storage() const noexcept { return x_; }

  bool same_shape(const auto& other) const noexcept {
    return n_ == other.bodies() && d_ == other.dim();
  }

  BodyMatrix& operator+=(const BodyMatrix& o) {
    check_shape(o);
    for (std::size_t k = 0; k < x_.size(); ++k) x_[k] += o.x_[k];
    return *this;
  }
  BodyMatrix& operator-=(const BodyMatrix& o) {
    check_shape(o);
    for (std::size_t k = 0; k < x_.size(); ++k) x_[k] -= o.x_[k];
    return *this;
  }
  BodyMatrix& operator*=(double s) {
    for (double& v : x_) v *= s;
    return *this;
  }
  friend BodyMatrix operator+(BodyMatrix a, const BodyMatrix& b) { return a += b; }
  friend BodyMatrix operator-(BodyMatrix a, const BodyMatrix& b) { return a -= b; }
  friend BodyMatrix operator*(double s, BodyMatrix a) { return a *= s; }
  friend BodyMatrix operator*(BodyMatrix a, double s) { return a *= s; }

  friend bool operator==(const BodyMatrix&, const BodyMatrix&) = default;

  bool all_finite() const {
    for (double v : x_)
      if (!std::isfinite(v)) return false;
    return true;
  }

 private:
  void check_shape(const BodyMatrix& o) const {
    if (!same_shape(o)) throw InvalidArgument("body matrix shape mismatch");
  }

  std::size_t n_ = 0, d_ = 0;
  std::vector<double> x_;
};

struct PositionTag {};
struct VelocityTag {};

using Configuration = BodyMatrix<PositionTag>;
using TangentVector = BodyMatrix<VelocityTag>;

/// A point of the ambient space E = R^d.
using Point = std::vector<double>;

namespace detail {
double mass_inner(std::span<const double> x, std::span<const double> y, const Masses& m,
                  std::size_t dim);
void check_masses(std::size_t bodies, const Masses& m);
}  // namespace detail

/// sum_i m_i <x_i, y_i>.
template <class TagA, class TagB>
double mass_inner(const BodyMatrix<TagA>& x, const BodyMatrix<TagB>& y, const Masses& m) {
  if (!x.same_shape(y)) throw InvalidArgument("mass_inner: shape mismatch");
  detail::check_masses(x.bodies(), m);
  return detail::mass_inner(x.data(), y.data(), m, x.dim());
}

template <class Tag>
double mass_norm(const BodyMatrix<Tag>& x, const Masses& m) {
  return std::sqrt(mass_inner(x, x, m));
}

/// Minimum pairwise distance; +inf when there are fewer than two bodies.
double min_mutual_distance(const Configuration& x);
/// Maximum pairwise distance (0 for a single body).
double diameter(const Configuration& x);

/// Absolute distance below which two bodies of x count as collided.
double collision_threshold(const Configuration& x);

/// U(x). Throws CollisionError on a (near-)coincident pair.
double potential(const Configuration& x, const Masses& m);

/// Gradient of U in the mass metric; component i is (1/m_i) dU/dx_i.
TangentVector potential_gradient(const Configuration& x, const Masses& m);

/// G(x) = sum_i m_i x_i (not divided by the total mass).
Point center_of_mass(const Configuration& x, const Masses& m);
/// G(x) / sum_i m_i.
Point barycenter(const Configuration& x, const Masses& m);

/// L(x, v) = |v|^2 / 2 + U(x).
double lagrangian(const Configuration& x, const TangentVector& v, const Masses& m);

/// Translates every body by c.
Configuration translated(Configuration x, std::span<const double> c);

/// Scale used to make tolerances relative: max of mass-metric distance and
/// the two configuration diameters, never below the smallest positive double.
double endpoint_scale(const Configuration& x, const Configuration& y, const Masses& m);

}  // namespace nbvar
