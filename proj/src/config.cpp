#include "nbvar/config.hpp"

#include <cmath>

namespace nbvar {

namespace {

Json flagship() {
  const double beta = 1.0 / std::sqrt(6.0);
  Json x0 = {{0.5, 0.5}, {0.5, -0.5}, {-1.0, 0.0}};
  return {
      {"masses", {1.0, 1.0, 1.0}},
      {"h", 0.5},
      {"x0", x0},
      {"sequence",
       {{"b", {{beta, 0.0}, {beta, 0.0}, {-2.0 * beta, 0.0}}},
        {"eps", {0.2, 0.1, 0.05, 0.025}},
        {"perturbation", {{{"body", 0}, {"direction", {0.0, 1.0}}}, {{"body", 1}, {"direction", {0.0, -1.0}}}}}}},
      {"lambda_c", 100.0},
      {"minimize", {{"coarse_dt", 0.5}, {"refinements", 5}, {"grad_tol", 1e-7}, {"max_iters", 20000}, {"seed", 1}}},
      {"experiment",
       {{"horizon", 1000.0}, {"rtol", 1e-11}, {"extrapolation", "last"}, {"cluster_rel_tol", 0.2}, {"samples_per_window", 200}}},
      {"horofunction",
       {{"x_ref", x0},
        {"probes", {{{0.5, 0.5}, {0.5, -0.5}, {-1.0, 0.4}}, {{0.3, 0.5}, {0.6, -0.6}, {-1.0, 0.0}}}},
        {"calibration_time", 10.0}}},
      // Velocities near the limit one; s moves the pair apart or together.
      {"probe",
       {{"x0", x0},
        {"v_base", {{0.7352, 1.0691}, {0.7352, -1.0691}, {-1.4705, 0.0}}},
        {"v_dir", {{0.0, 1.0}, {0.0, -1.0}, {0.0, 0.0}}},
        {"params", {{"from", -0.2}, {"to", 0.2}, {"count", 21}}},
        {"t_end", 1000.0},
        {"window", {100.0, 1000.0}},
        {"rtol", 1e-10}}}};
}

Json two_body() {
  Json x0 = {{0.0, 0.5}, {0.0, -0.5}};
  const double s = std::sqrt(0.5);  // |a|^2 / 2 = 1/2 with unit masses
  return {{"masses", {1.0, 1.0}},
          {"h", 0.5},
          {"x", x0},
          {"y", {{-0.3, 1.2}, {1.1, 0.4}}},
          {"v", {{0.9, 0.0}, {-0.9, 0.0}}},
          {"x0", x0},
          {"a", {{s, 0.0}, {-s, 0.0}}},
          {"lambda", 100.0},
          {"t_end", 100.0},
          {"rtol", 1e-10},
          {"minimize", {{"k0", 50}, {"refinements", 5}}}};
}

[[noreturn]] void fail(const std::string& what) { throw ConfigError("config: " + what); }

const Json& need(const Json& cfg, const char* key) {
  if (!cfg.is_object() || !cfg.contains(key)) fail(std::string("missing key '") + key + "'");
  return cfg.at(key);
}

double need_number(const Json& cfg, const char* key) {
  const Json& v = need(cfg, key);
  if (!v.is_number()) fail(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(std::string(what) + ": " + e.what());
  }
}

const Json& section(const Json& cfg, const char* key) {
  static const Json empty = Json::object();
  if (!cfg.contains(key)) return empty;
  if (!cfg.at(key).is_object()) fail(std::string("'") + key + "' must be an object");
  return cfg.at(key);
}

std::vector<double> param_list(const Json& p) {
  if (p.is_array()) return p.get<std::vector<double>>();
  double a = need_number(p, "from"), b = need_number(p, "to");
  auto n = need(p, "count").get<std::size_t>();
  return linspace(a, b, n);
}

}  // namespace

Json preset_config(const std::string& name) {
  if (name == "flagship") return flagship();
  if (name == "two_body") return two_body();
  fail("unknown preset '" + name + "'");
}

Json parse_config(const std::string& text) {
  Json cfg;
  try {
    cfg = Json::parse(text, nullptr, true, true);
  } catch (const Json::parse_error& e) {
    fail(std::string("parse error: ") + e.what());
  }
  if (!cfg.is_object()) fail("top level must be an object");
  if (cfg.contains("preset")) {
    if (!cfg.at("preset").is_string()) fail("'preset' must be a string");
    Json base = preset_config(cfg.at("preset").get<std::string>());
    base.merge_patch(cfg);
    cfg = std::move(base);
  }
  return cfg;
}

Json load_config(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    fail(e.what());
  }
  return parse_config(text);
}

Masses config_masses(const Json& cfg) {
  return guarded("masses", [&] { return masses_from_json(need(cfg, "masses")); });
}

double config_h(const Json& cfg) {
  double h = need_number(cfg, "h");
  if (!(h >= 0.0)) fail("'h' must be >= 0");
  return h;
}

Configuration config_configuration(const Json& cfg, const char* key) {
  Masses m = config_masses(cfg);
  Configuration x = guarded(key, [&] { return configuration_from_json(need(cfg, key)); });
  if (x.bodies() != m.size()) fail(std::string("'") + key + "' must have one row per mass");
  if (cfg.contains("dim") && x.dim() != cfg.at("dim").get<std::size_t>())
    fail(std::string("'") + key + "' does not match 'dim'");
  if (!x.all_finite()) fail(std::string("'") + key + "' has non-finite entries");
  return x;
}

TangentVector config_velocity(const Json& cfg, const char* key) {
  Configuration x = config_configuration(cfg, key);
  return TangentVector(x.bodies(), x.dim(), x.storage());
}

MinimizeOptions config_minimize(const Json& cfg) {
  MinimizeOptions o;
  const Json& s = section(cfg, "minimize");
  guarded("minimize", [&] {
    if (s.contains("k0")) o.k0 = s.at("k0").get<std::size_t>();
    if (s.contains("refinements")) o.refinements = s.at("refinements").get<int>();
    if (s.contains("grad_tol")) o.grad_tol = s.at("grad_tol").get<double>();
    if (s.contains("max_iters")) o.max_iters = s.at("max_iters").get<int>();
    if (s.contains("multistart")) o.multistart = s.at("multistart").get<int>();
    if (s.contains("seed")) o.seed = s.at("seed").get<std::uint64_t>();
    if (s.contains("memory")) o.memory = s.at("memory").get<int>();
    if (s.contains("tau_tol")) o.tau_tol = s.at("tau_tol").get<double>();
    if (s.contains("coarse_dt")) o.coarse_dt = s.at("coarse_dt").get<double>();
    if (s.contains("barrier_eps")) o.barrier_eps = s.at("barrier_eps").get<double>();
    o.validate();
    return 0;
  });
  return o;
}

DirectionSequence config_sequence(const Json& cfg) {
  Masses m = config_masses(cfg);
  double h = config_h(cfg);
  const Json& s = need(cfg, "sequence");
  Configuration b = guarded("sequence.b", [&] { return configuration_from_json(need(s, "b")); });
  if (b.bodies() != m.size()) fail("'sequence.b' must have one row per mass");
  auto eps = guarded("sequence.eps", [&] { return need(s, "eps").get<std::vector<double>>(); });
  std::vector<Perturbation> pert;
  guarded("sequence.perturbation", [&] {
    for (const auto& p : need(s, "perturbation"))
      pert.push_back({p.at("body").get<std::size_t>(), p.at("direction").get<std::vector<double>>()});
    return 0;
  });
  return guarded("sequence", [&] { return build_direction_sequence(b, m, h, eps, pert); });
}

LambdaRule config_lambda_rule(const Json& cfg) {
  double c = cfg.contains("lambda_c") ? need_number(cfg, "lambda_c") : 100.0;
  return guarded("lambda_c", [&] { return inverse_eps_rule(c); });
}

std::vector<double> config_lambdas(const Json& cfg, const DirectionSequence& seq) {
  if (cfg.contains("lambdas")) {
    auto l = guarded("lambdas", [&] { return cfg.at("lambdas").get<std::vector<double>>(); });
    if (l.size() != seq.size()) fail("'lambdas' needs one entry per eps");
    return l;
  }
  auto rule = config_lambda_rule(cfg);
  std::vector<double> out;
  for (std::size_t n = 0; n < seq.size(); ++n) out.push_back(rule(n, seq.eps[n]));
  return out;
}

ExperimentOptions config_experiment(const Json& cfg) {
  ExperimentOptions o;
  o.minimize = config_minimize(cfg);
  const Json& s = section(cfg, "experiment");
  guarded("experiment", [&] {
    if (s.contains("rtol")) o.rtol = s.at("rtol").get<double>();
    if (s.contains("samples_per_window")) o.samples_per_window = s.at("samples_per_window").get<std::size_t>();
    if (s.contains("uniform_samples")) o.uniform_samples = s.at("uniform_samples").get<std::size_t>();
    if (s.contains("cluster_rel_tol")) o.classify.cluster_rel_tol = s.at("cluster_rel_tol").get<double>();
    if (s.contains("min_margin")) o.classify.min_margin = s.at("min_margin").get<double>();
    if (s.contains("extrapolation")) {
      auto e = s.at("extrapolation").get<std::string>();
      if (e == "last") o.extrapolation = VelocityExtrapolation::last;
      else if (e == "richardson") o.extrapolation = VelocityExtrapolation::richardson;
      else fail("'experiment.extrapolation' must be 'last' or 'richardson'");
    }
    if (s.contains("windows"))
      for (const auto& w : s.at("windows")) o.windows.push_back({w.at(0).get<double>(), w.at(1).get<double>()});
    return 0;
  });
  if (!(o.rtol > 0.0)) fail("'experiment.rtol' must be positive");
  return o;
}

double config_horizon(const Json& cfg) {
  const Json& s = section(cfg, "experiment");
  double t = s.contains("horizon") ? need_number(s, "horizon") : 1000.0;
  if (!(t > 0.0)) fail("'experiment.horizon' must be positive");
  return t;
}

HorofunctionOptions config_horofunction(const Json& cfg) {
  HorofunctionOptions o;
  o.minimize = config_minimize(cfg);
  const Json& s = section(cfg, "horofunction");
  if (s.contains("calibration_time")) o.calibration_time = need_number(s, "calibration_time");
  if (!(o.calibration_time > 0.0)) fail("'horofunction.calibration_time' must be positive");
  return o;
}

std::vector<Configuration> config_probes(const Json& cfg) {
  const Json& s = section(cfg, "horofunction");
  Masses m = config_masses(cfg);
  std::vector<Configuration> out;
  guarded("horofunction.probes", [&] {
    for (const auto& p : need(s, "probes")) out.push_back(configuration_from_json(p));
    return 0;
  });
  for (const auto& x : out)
    if (x.bodies() != m.size()) fail("every probe needs one row per mass");
  return out;
}

ProbeFamily config_probe_family(const Json& cfg) {
  const Json& s = need(cfg, "probe");
  Json view = s;
  view["masses"] = need(cfg, "masses");
  ProbeFamily f;
  f.x0 = config_configuration(view, "x0");
  f.v_base = config_velocity(view, "v_base");
  f.v_dir = config_velocity(view, "v_dir");
  f.params = guarded("probe.params", [&] { return param_list(need(s, "params")); });
  f.h = s.contains("h") ? need_number(s, "h") : config_h(cfg);
  if (s.contains("t_end")) f.t_end = need_number(s, "t_end");
  if (s.contains("rtol")) f.rtol = need_number(s, "rtol");
  if (s.contains("window"))
    f.window = guarded("probe.window", [&] { return FitWindow{s.at("window").at(0).get<double>(), s.at("window").at(1).get<double>()}; });
  return f;
}

}  // namespace nbvar
