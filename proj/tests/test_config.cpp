#include "doctest.h"

#include "nbvar/config.hpp"

using namespace nbvar;

TEST_CASE("presets are self-consistent") {
  auto cfg = parse_config(R"({"preset": "flagship"})");
  CHECK(config_masses(cfg).size() == 3);
  CHECK(config_h(cfg) == 0.5);
  auto seq = config_sequence(cfg);
  CHECK(seq.size() == 4);
  auto lambdas = config_lambdas(cfg, seq);
  REQUIRE(lambdas.size() == 4);
  CHECK(lambdas[0] == doctest::Approx(500.0));
  CHECK(config_horizon(cfg) == 1000.0);
  auto e = config_experiment(cfg);
  CHECK(e.classify.cluster_rel_tol == 0.2);
  CHECK(e.extrapolation == VelocityExtrapolation::last);
  CHECK(config_probes(cfg).size() == 2);
  auto f = config_probe_family(cfg);
  CHECK(f.params.size() == 21);
  CHECK(f.params.front() == -0.2);

  auto two = parse_config(R"({"preset": "two_body"})");
  auto a = config_configuration(two, "a");
  CHECK(0.5 * mass_inner(a, a, config_masses(two)) == doctest::Approx(config_h(two)));
}

TEST_CASE("user keys override the preset") {
  auto cfg = parse_config(R"({
    // comments are allowed
    "preset": "flagship",
    "minimize": {"refinements": 2},
    "sequence": {"eps": [0.3, 0.2, 0.1]}
  })");
  auto o = config_minimize(cfg);
  CHECK(o.refinements == 2);
  CHECK(o.coarse_dt == 0.5);
  CHECK(config_sequence(cfg).size() == 3);
}

TEST_CASE("invalid configurations raise ConfigError") {
  CHECK_THROWS_AS(parse_config("{"), ConfigError);
  CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"preset": "nope"})"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
  auto cfg = parse_config(R"({"masses": [1, -1], "h": -0.5, "x": [[0, 0]]})");
  CHECK_THROWS_AS(config_masses(cfg), ConfigError);
  CHECK_THROWS_AS(config_h(cfg), ConfigError);
  auto cfg2 = parse_config(R"({"masses": [1, 1], "x": [[0, 0]], "minimize": {"k0": 2}})");
  CHECK_THROWS_AS(config_configuration(cfg2, "x"), ConfigError);
  CHECK_THROWS_AS(config_configuration(cfg2, "y"), ConfigError);
  CHECK_THROWS_AS(config_minimize(cfg2), ConfigError);
  CHECK_THROWS_AS(config_sequence(parse_config(R"({"preset": "flagship", "sequence": {"eps": [0.1, 0.2]}})")),
                  ConfigError);
  CHECK_THROWS_AS(config_experiment(parse_config(R"({"experiment": {"extrapolation": "cubic"}})")), ConfigError);
}
