#pragma once

// Independent reference computations used by the tests: naive loops, finite
// differences, and closed-form two-body motions.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "nbvar/action.hpp"

namespace oracle {

using nbvar::Configuration;
using nbvar::Masses;
using nbvar::TangentVector;

inline Configuration random_configuration(std::mt19937_64& rng, std::size_t n, std::size_t d, double spread = 1.0,
                                          double min_sep = 0.2) {
  std::uniform_real_distribution<double> u(-spread, spread);
  while (true) {
    Configuration x(n, d);
    for (double& v : x.data()) v = u(rng);
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double s = 0;
        for (std::size_t c = 0; c < d; ++c) s += (x(i, c) - x(j, c)) * (x(i, c) - x(j, c));
        ok = ok && std::sqrt(s) > min_sep;
      }
    if (ok) return x;
  }
}

inline Masses random_masses(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.5, 2.0);
  std::vector<double> m(n);
  for (double& v : m) v = u(rng);
  return Masses(m);
}

inline double naive_potential(const Configuration& x, const Masses& m) {
  double u = 0.0;
  for (std::size_t i = 0; i < x.bodies(); ++i)
    for (std::size_t j = 0; j < x.bodies(); ++j) {
      if (i == j) continue;
      double s = 0;
      for (std::size_t c = 0; c < x.dim(); ++c) s += std::pow(x(i, c) - x(j, c), 2);
      u += 0.5 * m[i] * m[j] / std::sqrt(s);
    }
  return u;
}

inline double naive_kinetic(const TangentVector& v, const Masses& m) {
  double k = 0.0;
  for (std::size_t i = 0; i < v.bodies(); ++i)
    for (std::size_t c = 0; c < v.dim(); ++c) k += 0.5 * m[i] * v(i, c) * v(i, c);
  return k;
}

inline double naive_action(const nbvar::DiscretePath& p) {
  double a = 0.0;
  const double dt = p.dt();
  for (std::size_t k = 0; k < p.intervals(); ++k) {
    Configuration x0 = p.node(k), x1 = p.node(k + 1);
    TangentVector v(x0.bodies(), x0.dim());
    for (std::size_t q = 0; q < v.size(); ++q) v.data()[q] = (x1.data()[q] - x0.data()[q]) / dt;
    a += dt * naive_kinetic(v, p.masses()) + 0.5 * dt * (naive_potential(x0, p.masses()) + naive_potential(x1, p.masses()));
  }
  return a;
}

/// Two unit masses on a circle of radius 1 about the origin: |x1 - x2| = 2,
/// angular velocity 1/2, period 4 pi, Lagrangian 3/4 along the motion.
struct CircularPair {
  static constexpr double omega = 0.5;
  static double period() { return 2.0 * std::numbers::pi / omega; }
  static Configuration at(double t) {
    double c = std::cos(omega * t), s = std::sin(omega * t);
    return {{c, s}, {-c, -s}};
  }
  static TangentVector velocity(double t) {
    double c = std::cos(omega * t), s = std::sin(omega * t);
    return {{-omega * s, omega * c}, {omega * s, -omega * c}};
  }
  static nbvar::DiscretePath path(double tau, std::size_t K) {
    std::vector<double> nodes;
    for (std::size_t k = 0; k <= K; ++k) {
      auto x = at(tau * static_cast<double>(k) / static_cast<double>(K));
      nodes.insert(nodes.end(), x.data().begin(), x.data().end());
    }
    return nbvar::DiscretePath(Masses{1.0, 1.0}, 2, 0.0, tau, K, nodes);
  }
  static double action(double tau) { return 0.75 * tau; }
};

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace oracle
