#include "doctest.h"
#include "oracles.hpp"

#include <limits>

#include "nbvar/core.hpp"

using namespace nbvar;

TEST_CASE("masses reject non-positive entries") {
  CHECK_THROWS_AS(Masses({1.0, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(Masses({1.0, -2.0}), InvalidArgument);
  CHECK_THROWS_AS(Masses(std::vector<double>{}), InvalidArgument);
  CHECK(Masses({1.0, 2.5}).total() == doctest::Approx(3.5));
}

TEST_CASE("mass inner product") {
  SUBCASE("single body") {
    Configuration x{{1.0, 0.0}};
    CHECK(mass_inner(x, x, Masses{2.0}) == 2.0);
  }
  SUBCASE("per-body orthogonal vectors") {
    Configuration x{{1.0, 0.0}, {0.0, 3.0}}, y{{0.0, 5.0}, {-2.0, 0.0}};
    CHECK(mass_inner(x, y, Masses{1.0, 4.0}) == 0.0);
  }
  SUBCASE("shape mismatch") {
    Configuration x{{1.0, 0.0}}, y{{1.0, 0.0, 0.0}};
    CHECK_THROWS_AS(mass_inner(x, y, Masses{1.0}), InvalidArgument);
  }
  SUBCASE("naive sum, symmetry, bilinearity, positivity") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      auto m = oracle::random_masses(rng, 4);
      auto x = oracle::random_configuration(rng, 4, 3, 2.0, 0.0);
      auto y = oracle::random_configuration(rng, 4, 3, 2.0, 0.0);
      auto z = oracle::random_configuration(rng, 4, 3, 2.0, 0.0);
      double naive = 0.0;
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t c = 0; c < 3; ++c) naive += m[i] * x(i, c) * y(i, c);
      CHECK(oracle::rel_err(mass_inner(x, y, m), naive) <= 1e-14);
      CHECK(mass_inner(x, y, m) == doctest::Approx(mass_inner(y, x, m)).epsilon(1e-12));
      double lhs = mass_inner(2.0 * x + (-3.0) * y, z, m);
      double rhs = 2.0 * mass_inner(x, z, m) - 3.0 * mass_inner(y, z, m);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * (std::abs(lhs) + 1.0));
      CHECK(mass_inner(x, x, m) > 0.0);
    }
  }
}

TEST_CASE("potential") {
  CHECK(potential(Configuration{{-1.0, 0.0}, {1.0, 0.0}}, Masses{1.0, 1.0}) == 0.5);
  const double h = std::sqrt(3.0) / 2.0;
  CHECK(potential(Configuration{{0.0, 0.0}, {1.0, 0.0}, {0.5, h}}, Masses{1.0, 1.0, 1.0}) ==
        doctest::Approx(3.0).epsilon(1e-14));

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    auto m = oracle::random_masses(rng, 4);
    auto x = oracle::random_configuration(rng, 4, 2);
    double u = potential(x, m);
    CHECK(oracle::rel_err(u, oracle::naive_potential(x, m)) <= 1e-13);
    CHECK(oracle::rel_err(potential(3.0 * x, m), u / 3.0) <= 1e-14);
    CHECK(oracle::rel_err(potential(translated(x, std::vector<double>{4.0, -7.0}), m), u) <= 1e-13);
    double th = 0.3 + trial;
    Configuration r(4, 2);
    for (std::size_t i = 0; i < 4; ++i) {
      r(i, 0) = std::cos(th) * x(i, 0) - std::sin(th) * x(i, 1);
      r(i, 1) = std::sin(th) * x(i, 0) + std::cos(th) * x(i, 1);
    }
    CHECK(oracle::rel_err(potential(r, m), u) <= 1e-13);
  }

  SUBCASE("collision carries the pair") {
    Configuration x{{0.0, 0.0}, {1.0, 1.0}, {1.0, 1.0}};
    try {
      potential(x, Masses{1.0, 1.0, 1.0});
      FAIL("expected a collision");
    } catch (const CollisionError& e) {
      CHECK(e.first() == 1);
      CHECK(e.second() == 2);
    }
  }
}

TEST_CASE("potential gradient") {
  SUBCASE("hand-evaluated pair") {
    auto g = potential_gradient(Configuration{{-1.0, 0.0}, {1.0, 0.0}}, Masses{1.0, 1.0});
    CHECK(g(0, 0) == doctest::Approx(0.25));
    CHECK(g(1, 0) == doctest::Approx(-0.25));
    CHECK(g(0, 1) == 0.0);
  }
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    auto m = oracle::random_masses(rng, 3);
    auto x = oracle::random_configuration(rng, 3, 2);
    auto g = potential_gradient(x, m);
    double u = potential(x, m);
    Configuration xt(3, 2, x.storage());
    CHECK(std::abs(mass_inner(g, xt, m) + u) <= 1e-12 * u);
    for (std::size_t c = 0; c < 2; ++c) {
      double f = 0.0;
      for (std::size_t i = 0; i < 3; ++i) f += m[i] * g(i, c);
      CHECK(std::abs(f) <= 1e-12 * u);
    }
    // (1/m_i) dU/dx_i by central differences.
    const double step = 1e-6;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t c = 0; c < 2; ++c) {
        Configuration xp = x, xm = x;
        xp(i, c) += step;
        xm(i, c) -= step;
        double fd = (oracle::naive_potential(xp, m) - oracle::naive_potential(xm, m)) / (2 * step) / m[i];
        CHECK(std::abs(fd - g(i, c)) <= 1e-6 * std::max(1.0, std::abs(g(i, c))));
      }
  }
}

TEST_CASE("center of mass and distances") {
  CHECK(center_of_mass(Configuration{{-1.0, 0.0}, {1.0, 0.0}}, Masses{1.0, 1.0}) == Point{0.0, 0.0});
  CHECK(center_of_mass(Configuration{{1.0, 2.0}}, Masses{3.0}) == Point{3.0, 6.0});
  std::mt19937_64 rng(5);
  auto m = oracle::random_masses(rng, 3);
  auto x = oracle::random_configuration(rng, 3, 2, 1.0, 0.0), y = oracle::random_configuration(rng, 3, 2, 1.0, 0.0);
  auto gx = center_of_mass(x, m), gy = center_of_mass(y, m), gs = center_of_mass(2.0 * x + (-0.5) * y, m);
  for (std::size_t c = 0; c < 2; ++c) CHECK(std::abs(gs[c] - (2.0 * gx[c] - 0.5 * gy[c])) <= 1e-14 * 10);
  auto gt = center_of_mass(translated(x, std::vector<double>{1.0, -1.0}), m);
  CHECK(gt[0] == doctest::Approx(gx[0] + m.total()));

  CHECK(min_mutual_distance(Configuration{{0.0, 0.0}, {0.0, 0.0}}) == 0.0);
  CHECK(min_mutual_distance(Configuration{{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}}) ==
        doctest::Approx(1.0));
  CHECK(min_mutual_distance(Configuration{{1.0, 1.0}}) == std::numeric_limits<double>::infinity());
  for (int trial = 0; trial < 10; ++trial) {
    auto z = oracle::random_configuration(rng, 5, 3, 1.0, 0.0);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i + 1; j < 5; ++j) {
        double s = 0;
        for (std::size_t c = 0; c < 3; ++c) s += (z(i, c) - z(j, c)) * (z(i, c) - z(j, c));
        best = std::min(best, std::sqrt(s));
      }
    CHECK(min_mutual_distance(z) == best);
  }
}

TEST_CASE("lagrangian") {
  Masses m{1.0, 1.0};
  Configuration x{{-1.0, 0.0}, {1.0, 0.0}};
  CHECK(lagrangian(x, TangentVector(2, 2), m) == 0.5);
  Configuration far{{-1e8, 0.0}, {1e8, 0.0}};
  double lf = lagrangian(far, TangentVector(2, 2), m);
  CHECK(lf > 0.0);
  CHECK(lf < 1e-8);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    auto mm = oracle::random_masses(rng, 3);
    auto xx = oracle::random_configuration(rng, 3, 2);
    auto vv = oracle::random_configuration(rng, 3, 2, 1.0, 0.0);
    TangentVector v(3, 2, vv.storage());
    double ref = oracle::naive_kinetic(v, mm) + oracle::naive_potential(xx, mm);
    CHECK(oracle::rel_err(lagrangian(xx, v, mm), ref) <= 1e-14);
  }
}
