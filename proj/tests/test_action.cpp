#include "doctest.h"
#include "oracles.hpp"

#include <numeric>

#include "nbvar/action.hpp"

using namespace nbvar;
using oracle::CircularPair;

TEST_CASE("discrete path construction") {
  Masses m{1.0, 1.0};
  CHECK_THROWS_AS(DiscretePath(m, 2, 0.0, 1.0, 0, std::vector<double>(4)), InvalidArgument);
  CHECK_THROWS_AS(DiscretePath(m, 2, 0.0, -1.0, 2, std::vector<double>(12)), InvalidArgument);
  CHECK_THROWS_AS(DiscretePath(m, 2, 0.0, 1.0, 2, std::vector<double>(11)), InvalidArgument);
  CHECK_THROWS_AS(DiscretePath(m, 2, std::vector<double>{0.0, 0.4, 1.0}, std::vector<double>(12)), InvalidArgument);
  CHECK_THROWS_AS(EnergyLevel(-0.1), DomainError);

  auto p = DiscretePath::straight(Configuration{{0.0, 0.0}, {1.0, 0.0}}, Configuration{{0.0, 1.0}, {1.0, 1.0}}, 2.0,
                                  4, m, 1.0);
  CHECK(p.intervals() == 4);
  CHECK(p.t0() == 1.0);
  CHECK(p.duration() == doctest::Approx(2.0));
  CHECK(p.node(2)(0, 1) == doctest::Approx(0.5));
  auto s = p.slice(1, 3);
  CHECK(s.intervals() == 2);
  CHECK(s.front() == p.node(1));
}

TEST_CASE("action of simple paths") {
  Configuration x{{-1.0, 0.0}, {1.0, 0.0}};
  Masses m{1.0, 1.0};
  auto c = DiscretePath::constant(x, 3.0, 10, m);
  CHECK(action_fixed_time(c) == doctest::Approx(0.5 * 3.0).epsilon(1e-14));
  CHECK(action_supercritical(c, EnergyLevel(0.25)) == doctest::Approx((0.5 + 0.25) * 3.0).epsilon(1e-14));

  auto free = DiscretePath::straight(Configuration{{0.0, 0.0}}, Configuration{{3.0, 4.0}}, 2.0, 7, Masses{1.0});
  CHECK(action_fixed_time(free) == doctest::Approx(25.0 / 4.0).epsilon(1e-14));
  CHECK(action_supercritical(free, EnergyLevel(0.0)) == action_fixed_time(free));
  double a0 = action_supercritical(free, EnergyLevel(0.0)), a1 = action_supercritical(free, EnergyLevel(0.5)),
         a2 = action_supercritical(free, EnergyLevel(1.0));
  CHECK(a0 < a1);
  CHECK(a1 < a2);
}

TEST_CASE("action quadrature is second order on an exact circular arc") {
  const double tau = 3.0;
  std::vector<double> err;
  for (std::size_t K : {100u, 200u, 400u, 800u, 1600u, 3200u, 6400u})
    err.push_back(std::abs(action_fixed_time(CircularPair::path(tau, K)) - CircularPair::action(tau)));
  for (std::size_t q = 1; q < err.size(); ++q) {
    double order = std::log2(err[q - 1] / err[q]);
    CHECK(order >= 1.8);
    CHECK(order <= 2.2);
  }
  CHECK(err.front() <= 10.0 * tau / (100.0 * 100.0));
}

TEST_CASE("action is invariant under reversal") {
  std::mt19937_64 rng(1);
  auto m = oracle::random_masses(rng, 3);
  auto p = DiscretePath::straight(oracle::random_configuration(rng, 3, 2), oracle::random_configuration(rng, 3, 2),
                                  1.3, 31, m);
  for (double& v : p.interior()) v += 0.01 * std::sin(v * 17.0);
  auto r = p.reversed();
  CHECK(oracle::rel_err(action_fixed_time(r), action_fixed_time(p)) <= 1e-14);
  CHECK(oracle::rel_err(jm_length(r, EnergyLevel(0.5)), jm_length(p, EnergyLevel(0.5))) <= 1e-14);
}

TEST_CASE("action gradient") {
  SUBCASE("free particle on a straight line is stationary") {
    auto p = DiscretePath::straight(Configuration{{0.0, 0.0}}, Configuration{{1.0, -2.0}}, 1.0, 16, Masses{1.0});
    for (const auto& g : action_gradient(p)) CHECK(mass_norm(g, p.masses()) <= 1e-12);
  }
  SUBCASE("exact circular arc is stationary to second order") {
    auto norm = [](const DiscretePath& p) {
      double s = 0.0;
      for (const auto& g : action_gradient(p)) s = std::max(s, mass_norm(g, p.masses()));
      return s;
    };
    double g1 = norm(CircularPair::path(2.0, 100)), g2 = norm(CircularPair::path(2.0, 200));
    // Per-node residual is dt * O(dt^2): one doubling divides it by 8.
    CHECK(std::log2(g1 / g2) >= 2.7);
    CHECK(std::log2(g1 / g2) <= 3.3);
  }
  SUBCASE("central finite differences") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 5; ++trial) {
      auto m = oracle::random_masses(rng, 3);
      auto p = DiscretePath::straight(oracle::random_configuration(rng, 3, 2), oracle::random_configuration(rng, 3, 2),
                                      0.9, 12, m);
      for (double& v : p.interior()) v += 0.05 * std::cos(31.0 * v);
      auto g = action_gradient(p);
      const double step = 1e-6;
      double num = 0.0, den = 0.0;
      for (std::size_t k = 1; k < p.intervals(); ++k)
        for (std::size_t q = 0; q < p.stride(); ++q) {
          auto pp = p, pm = p;
          pp.node_data(k)[q] += step;
          pm.node_data(k)[q] -= step;
          double fd = (oracle::naive_action(pp) - oracle::naive_action(pm)) / (2 * step) / m[q / 2];
          double an = g[k - 1].data()[q];
          num = std::max(num, std::abs(fd - an));
          den = std::max(den, std::abs(an));
        }
      CHECK(num <= 1e-6 * den);
    }
  }
}

TEST_CASE("Jacobi-Maupertuis length") {
  Masses m{1.0, 1.0};
  CHECK(jm_length(DiscretePath::constant(Configuration{{-1.0, 0.0}, {1.0, 0.0}}, 1.0, 5, m), EnergyLevel(0.5)) == 0.0);
  auto free = DiscretePath::straight(Configuration{{0.0, 0.0}}, Configuration{{3.0, 4.0}}, 2.0, 9, Masses{1.0});
  CHECK(jm_length(free, EnergyLevel(0.5)) == doctest::Approx(5.0).epsilon(1e-14));

  double l200 = jm_length(CircularPair::path(3.0, 200), EnergyLevel(0.5));
  double l400 = jm_length(CircularPair::path(3.0, 400), EnergyLevel(0.5));
  // |v| = 1/sqrt(2), U = 1/2: sqrt(2 (h + U)) |v| tau = sqrt(2) / sqrt(2) * 3.
  CHECK(std::abs(l200 - l400) <= 10.0 * std::pow(3.0 / 200.0, 2));
  CHECK(l400 == doctest::Approx(3.0).epsilon(1e-4));

  SUBCASE("bounded by the supercritical action") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 10; ++trial) {
      auto mm = oracle::random_masses(rng, 3);
      auto p = DiscretePath::straight(oracle::random_configuration(rng, 3, 2),
                                      oracle::random_configuration(rng, 3, 2), 0.5 + trial, 20, mm);
      for (double h : {0.0, 0.5, 2.0}) CHECK(jm_length(p, EnergyLevel(h)) <= action_supercritical(p, EnergyLevel(h)));
    }
  }
}

TEST_CASE("energy profile") {
  Configuration x{{-1.0, 0.0}, {1.0, 0.0}};
  for (double e : path_energy_profile(DiscretePath::constant(x, 1.0, 4, Masses{1.0, 1.0})))
    CHECK(e == doctest::Approx(-0.5));
  auto free = DiscretePath::straight(Configuration{{0.0, 0.0}}, Configuration{{3.0, 0.0}}, 2.0, 6, Masses{1.0});
  for (double e : path_energy_profile(free)) CHECK(e == doctest::Approx(9.0 / 8.0));
}

TEST_CASE("collisions are reported with the node index") {
  Configuration x{{0.0, 0.0}, {1.0, 0.0}}, y{{1.0, 0.0}, {0.0, 0.0}};
  auto p = DiscretePath::straight(x, y, 1.0, 2, Masses{1.0, 1.0});
  try {
    action_fixed_time(p);
    FAIL("expected a collision");
  } catch (const CollisionError& e) {
    REQUIRE(e.node().has_value());
    CHECK(*e.node() == 1);
  }
  CHECK_THROWS_AS(jm_length(p, EnergyLevel(0.5)), CollisionError);
  CHECK_THROWS_AS(action_gradient(p), CollisionError);
}
