#include "doctest.h"
#include "oracles.hpp"

#include "nbvar/experiments.hpp"

using namespace nbvar;

namespace {

const Masses kThree{1.0, 1.0, 1.0};
const double kBeta = 1.0 / std::sqrt(6.0);

Configuration beta_config() { return Configuration{{kBeta, 0.0}, {kBeta, 0.0}, {-2.0 * kBeta, 0.0}}; }

std::vector<Perturbation> pair_split() { return {{0, {0.0, 1.0}}, {1, {0.0, -1.0}}}; }

double half_norm2(const Configuration& x, const Masses& m) { return 0.5 * mass_inner(x, x, m); }

double com_norm(const Configuration& x, const Masses& m) {
  auto g = center_of_mass(x, m);
  double s = 0.0;
  for (double c : g) s += c * c;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("direction normalization") {
  std::mt19937_64 rng(5);
  auto m = oracle::random_masses(rng, 4);
  auto x = oracle::random_configuration(rng, 4, 3, 2.0, 0.1);
  auto b = normalize_direction(x, m, 0.7);
  CHECK(half_norm2(b, m) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(com_norm(b, m) <= 1e-14);
  CHECK_THROWS_AS(normalize_direction(Configuration{{1.0, 1.0}}, Masses{1.0}, 0.5), InvalidArgument);
}

TEST_CASE("direction sequence towards a collinear configuration") {
  auto seq = build_direction_sequence(beta_config(), kThree, 0.5, {0.2, 0.1, 0.05, 0.025}, pair_split());
  REQUIRE(seq.size() == 4);
  // b is already normalized, so it must come back unchanged.
  CHECK(mass_norm(seq.b - beta_config(), kThree) <= 1e-15);
  for (std::size_t n = 0; n < seq.size(); ++n) {
    CAPTURE(n);
    CHECK(half_norm2(seq.a[n], kThree) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(com_norm(seq.a[n], kThree) <= 1e-12);
    CHECK(min_mutual_distance(seq.a[n]) > 0.0);
  }
  // eps = 0.1: bodies 0 and 1 are split symmetrically in y.
  const auto& a1 = seq.a[1];
  CHECK(std::abs(a1(0, 0) - a1(1, 0)) <= 1e-12);
  CHECK(std::abs(a1(0, 1) + a1(1, 1)) <= 1e-12);
  CHECK(a1(0, 1) > 0.0);

  // |a_n - b| shrinks linearly in eps.
  for (std::size_t n = 1; n < seq.size(); ++n) {
    double ratio = mass_norm(seq.a[n - 1] - seq.b, kThree) / mass_norm(seq.a[n] - seq.b, kThree);
    CHECK(ratio == doctest::Approx(2.0).epsilon(0.02));
  }
}

TEST_CASE("direction sequence errors") {
  CHECK_THROWS_AS(build_direction_sequence(beta_config(), kThree, 0.0, {0.1}, pair_split()), DomainError);
  CHECK_THROWS_AS(build_direction_sequence(Configuration{{1.0, 0.0}}, Masses{1.0}, 0.5, {0.1}, {}), InvalidArgument);
  CHECK_THROWS_AS(build_direction_sequence(beta_config(), kThree, 0.5, {}, pair_split()), InvalidArgument);
  CHECK_THROWS_AS(build_direction_sequence(beta_config(), kThree, 0.5, {0.1, 0.2}, pair_split()), InvalidArgument);
  // No perturbation: a_n = b has a collision and is not admissible.
  CHECK_THROWS_AS(build_direction_sequence(beta_config(), kThree, 0.5, {0.1}, {}), ConstructionError);
}

TEST_CASE("velocity projection") {
  Configuration x{{0.5, 0.5}, {0.5, -0.5}, {-1.0, 0.0}};
  TangentVector v{{0.7, 1.1}, {0.8, -1.0}, {-1.4, 0.3}};
  auto w = project_velocity(v, x, kThree, 0.5);
  CHECK(0.5 * mass_inner(w, w, kThree) - potential(x, kThree) == doctest::Approx(0.5).epsilon(1e-13));
  for (std::size_t c = 0; c < 2; ++c) {
    double p = 0.0;
    for (std::size_t i = 0; i < 3; ++i) p += w(i, c);
    CHECK(std::abs(p) <= 1e-13);
  }
}

TEST_CASE("two-body hyperbolic rays") {
  const Masses m{1.0, 1.0};
  const Configuration x0{{0.0, 0.5}, {0.0, -0.5}};
  const double s = std::sqrt(0.5);
  const Configuration a{{s, 0.0}, {-s, 0.0}};
  MinimizeOptions o;
  o.coarse_dt = 0.5;
  o.refinements = 4;

  std::vector<TangentVector> v;
  for (double lambda : {50.0, 100.0, 200.0}) {
    auto ray = build_hyperbolic_ray(x0, a, m, 0.5, lambda, o);
    CAPTURE(lambda);
    CHECK(ray.minimizer.converged);
    CHECK(ray.minimizer.energy_residual <= 1e-3);
    CHECK(std::abs(ray.sphere_residual) <= 1e-2);
    if (lambda == 100.0) CHECK(ray.tail_angle <= 0.05);
    v.push_back(ray.v0);
  }
  double d1 = mass_norm(v[1] - v[0], m), d2 = mass_norm(v[2] - v[1], m);
  CHECK(d2 < d1);

  CHECK_THROWS_AS(build_hyperbolic_ray(Configuration{{0.0, 0.0}}, Configuration{{1.0, 0.0}}, Masses{1.0}, 0.5, 10.0),
                  InvalidArgument);
  CHECK_THROWS_AS(build_hyperbolic_ray(x0, a, m, 0.5, -1.0), InvalidArgument);
  CHECK_THROWS_AS(build_hyperbolic_ray(x0, 2.0 * a, m, 0.5, 10.0), InvalidArgument);
}

TEST_CASE("inverse eps rule") {
  auto r = inverse_eps_rule(100.0);
  CHECK(r(0, 0.2) == doctest::Approx(500.0));
  CHECK(r(3, 0.025) == doctest::Approx(4000.0));
}

TEST_CASE("experiment needs several rays") {
  auto seq = build_direction_sequence(beta_config(), kThree, 0.5, {0.1}, pair_split());
  Configuration x0{{0.5, 0.5}, {0.5, -0.5}, {-1.0, 0.0}};
  CHECK_THROWS_AS(partially_hyperbolic_experiment(x0, seq, 0.5, inverse_eps_rule(100.0), 1000.0), ExperimentError);
}

TEST_CASE("final configuration map probe") {
  ProbeFamily empty;
  CHECK_THROWS_AS(continuity_probe_C(empty, Masses{1.0, 1.0}), InvalidArgument);

  // Two bodies escaping fast: every member is hyperbolic and a(s) is smooth.
  ProbeFamily f;
  f.x0 = Configuration{{0.0, 0.5}, {0.0, -0.5}};
  f.v_base = TangentVector{{1.2, 0.0}, {-1.2, 0.0}};
  f.v_dir = TangentVector{{0.0, 1.0}, {0.0, -1.0}};
  f.params = linspace(-0.2, 0.2, 9);
  f.h = 0.5;
  f.t_end = 400.0;
  f.window = {40.0, 400.0};
  auto t = continuity_probe_C(f, Masses{1.0, 1.0});
  REQUIRE(t.rows.size() == 9);
  for (const auto& r : t.rows) {
    CHECK(r.ok);
    CHECK(std::abs(r.energy_of_a - 0.5) <= 1e-2);
  }
  CHECK(t.max_jump <= 10.0 * 0.05);
  CHECK(t.max_jump_per_step <= 10.0);
}

TEST_CASE("two-body horofunction estimate") {
  const Masses m{1.0, 1.0};
  const double s = std::sqrt(0.5);
  auto seq = build_direction_sequence(Configuration{{s, 0.0}, {-s, 0.0}}, m, 0.5, {0.2, 0.1, 0.05},
                                      {{0, {0.0, 1.0}}, {1, {0.0, -1.0}}});
  const Configuration x_ref{{0.0, 0.5}, {0.0, -0.5}};
  std::vector<Configuration> probes{Configuration{{0.2, 0.5}, {-0.2, -0.5}}, Configuration{{0.0, 0.7}, {0.0, -0.7}}};
  HorofunctionOptions o;
  o.minimize.coarse_dt = 0.5;
  o.minimize.refinements = 3;
  o.calibration_time = 2.0;
  auto rep = estimate_horofunction(probes, x_ref, seq, {20.0, 40.0, 80.0}, o);
  REQUIRE(rep.samples.size() == 3);
  REQUIRE(rep.phi_pairs.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(rep.phi_pairs[i][i] == 0.0);
  for (const auto& smp : rep.samples) {
    CHECK(smp.ok);
    CHECK(smp.u_values.size() == 2);
    CHECK(smp.calib_time > 0.0);
  }
  CHECK(rep.samples[0].cauchy.empty());
  CHECK(rep.samples[2].cauchy.size() == 2);
  // Triangle inequality for the free-time action: u(x) - u(y) <= phi(x, y).
  CHECK(rep.max_domination <= 1e-4);
  CHECK(rep.max_calibration <= 1e-3);

  CHECK_THROWS_AS(estimate_horofunction(probes, x_ref, seq, {20.0}, o), InvalidArgument);
}
