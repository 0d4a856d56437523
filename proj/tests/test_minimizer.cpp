#include "doctest.h"
#include "oracles.hpp"

#include <limits>

#include "nbvar/flow.hpp"
#include "nbvar/minimizer.hpp"

using namespace nbvar;
using oracle::CircularPair;

namespace {

const Configuration kX{{-0.5, 0.0}, {0.5, 0.0}};
const Configuration kY{{-0.3, 1.2}, {1.1, 0.4}};
const Masses kUnit2{1.0, 1.0};

MinimizeOptions quick() {
  MinimizeOptions o;
  o.k0 = 40;
  o.refinements = 3;
  return o;
}

}  // namespace

TEST_CASE("options are validated") {
  MinimizeOptions o;
  o.k0 = 4;
  CHECK_THROWS_AS(minimize_fixed(kX, kY, 1.0, kUnit2, o), InvalidArgument);
  CHECK_THROWS_AS(minimize_fixed(kX, kY, -1.0, kUnit2), InvalidArgument);
  CHECK_THROWS_AS(minimize_free_time(kX, kY, EnergyLevel(0.0), kUnit2), DomainError);
  Configuration bad{{0.0, 0.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(minimize_fixed(bad, kY, 1.0, kUnit2), InvalidArgument);
}

TEST_CASE("fixed-time minimizer") {
  SUBCASE("free particle") {
    Configuration x{{0.0, 0.0}}, y{{2.0, 1.0}};
    auto r = minimize_fixed(x, y, 1.0, Masses{1.0}, quick());
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(r.min_interior_distance == std::numeric_limits<double>::infinity());
  }
  SUBCASE("exact circular arc") {
    const double tau = 2.0;
    auto r = minimize_fixed(CircularPair::at(0.0), CircularPair::at(tau), tau, kUnit2);
    CHECK(r.converged);
    CHECK(r.path.intervals() == 1600);
    CHECK(r.grad_norm <= MinimizeOptions{}.grad_tol);
    CHECK(oracle::rel_err(r.value, CircularPair::action(tau)) <= 1e-4);
  }
  SUBCASE("equal endpoints and a short duration stay near the constant path") {
    const double tau = 1e-3;
    auto r = minimize_fixed(kX, kX, tau, kUnit2, quick());
    CHECK(r.converged);
    double bound = potential(kX, kUnit2) * tau;
    CHECK(r.value <= bound + 1e-15);
    CHECK(bound - r.value <= 1e-6);
  }
  SUBCASE("iteration cap flags the result instead of throwing") {
    MinimizeOptions o = quick();
    o.max_iters = 1;
    o.refinements = 0;
    auto r = minimize_fixed(kX, kY, 2.0, kUnit2, o);
    CHECK_FALSE(r.converged);
  }
  SUBCASE("same seed, same answer") {
    auto a = minimize_fixed(kX, kY, 1.5, kUnit2, quick());
    auto b = minimize_fixed(kX, kY, 1.5, kUnit2, quick());
    CHECK(a.path == b.path);
    CHECK(a.value == b.value);
  }
}

TEST_CASE("free-time minimizer") {
  auto r = minimize_free_time(kX, kY, EnergyLevel(0.5), kUnit2);
  REQUIRE(r.converged);
  CHECK(r.tau_star > 0.0);
  CHECK(r.energy_residual <= 1e-3);
  CHECK(std::abs(jm_length(r.path, EnergyLevel(0.5)) - r.value) <= 1e-4 * r.value);
  CHECK(shoot_and_compare(r.path, 1e-11) <= 1e-3);
  for (const auto& [tau, g] : r.samples) CHECK(r.value <= g + 1e-12);
  auto chk = check_interior_collisionfree(r.path, 1e-3 * endpoint_scale(kX, kY, kUnit2));
  CHECK(chk.collision_free);

  SUBCASE("a coarse tau scan does not find anything lower") {
    auto o = MinimizeOptions{};
    for (int q = -4; q <= 4; ++q) {
      double tau = r.tau_star * std::exp(0.05 * q);
      double g = minimize_fixed(kX, kY, tau, kUnit2, o).value + 0.5 * tau;
      CHECK(r.value <= g + 1e-9 * r.value);
    }
  }
}

TEST_CASE("free-time minimizer with equal endpoints is degenerate") {
  auto r = minimize_free_time(kX, kX, EnergyLevel(0.5), kUnit2, quick());
  CHECK(r.degenerate);
  CHECK(r.value <= 1e-4);
  CHECK(r.tau_star > 0.0);
}

TEST_CASE("triangle inequality for the supercritical potential") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 2; ++trial) {
    auto x = oracle::random_configuration(rng, 2, 2, 1.0, 0.5);
    auto y = oracle::random_configuration(rng, 2, 2, 1.0, 0.5);
    auto z = oracle::random_configuration(rng, 2, 2, 1.0, 0.5);
    auto o = quick();
    double xz = minimize_free_time(x, z, EnergyLevel(0.5), kUnit2, o).value;
    double xy = minimize_free_time(x, y, EnergyLevel(0.5), kUnit2, o).value;
    double yz = minimize_free_time(y, z, EnergyLevel(0.5), kUnit2, o).value;
    CHECK(xz <= xy + yz + 1e-6);
  }
}

TEST_CASE("mesh refinement") {
  auto p = DiscretePath::straight(Configuration{{0.0, 0.0}}, Configuration{{1.0, 2.0}}, 1.0, 8, Masses{1.0});
  auto q = refine(p);
  CHECK(q.intervals() == 16);
  CHECK(q == DiscretePath::straight(Configuration{{0.0, 0.0}}, Configuration{{1.0, 2.0}}, 1.0, 16, Masses{1.0}));
  auto r = refine(q);
  for (std::size_t k = 0; k <= 8; ++k) CHECK(r.node(4 * k) == p.node(k));

  double a1 = action_fixed_time(refine(CircularPair::path(2.0, 50)));
  double a2 = action_fixed_time(CircularPair::path(2.0, 50));
  CHECK(std::abs(a1 - a2) <= 10.0 * std::pow(2.0 / 50.0, 2));
}

TEST_CASE("interior collision check") {
  auto single = DiscretePath::straight(Configuration{{0.0, 0.0}}, Configuration{{1.0, 2.0}}, 1.0, 8, Masses{1.0});
  auto c1 = check_interior_collisionfree(single, 1e300);
  CHECK(c1.collision_free);
  CHECK(c1.distance == std::numeric_limits<double>::infinity());

  Configuration x{{0.0, 0.0}, {1.0, 0.0}, {5.0, 5.0}}, y{{1.0, 0.0}, {0.0, 0.0}, {5.0, 6.0}};
  auto p = DiscretePath::straight(x, y, 1.0, 4, Masses{1.0, 1.0, 1.0});
  auto c2 = check_interior_collisionfree(p, 1e-6);
  CHECK_FALSE(c2.collision_free);
  CHECK(c2.node == 2);
  CHECK(c2.i == 0);
  CHECK(c2.j == 1);
}

TEST_CASE("initial duration bracket") {
  auto [lo, hi] = initial_tau_bracket(kX, kY, 0.5, kUnit2);
  CHECK(lo > 0.0);
  CHECK(lo < hi);
  double ell = mass_norm(kY - kX, kUnit2);
  CHECK(hi == doctest::Approx(4.0 * ell));
}
