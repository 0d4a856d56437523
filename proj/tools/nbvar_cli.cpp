// nbvar: command-line front end.
//
//   nbvar minimize --config run.json [--h H] [--tau T] [--k0 K] [--refinements R] [--seed S]
//   nbvar flow     --config run.json --t-end T --rtol R
//   nbvar ray      --config run.json --lambda L
//   nbvar horofn   --config run.json
//   nbvar phmotion --config run.json
//   nbvar probe-c  --config run.json
//
// Exit codes: 0 ok, 2 invalid config, 3 solver did not converge, 4 experiment error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "nbvar/config.hpp"

using namespace nbvar;

namespace {

constexpr int kOk = 0, kConfig = 2, kNoConvergence = 3, kExperiment = 4;

struct Common {
  std::string config;
  std::string out;
};

void add_common(CLI::App* sub, Common& c, const std::string& default_out) {
  sub->add_option("--config", c.config, "JSON run configuration")->required();
  sub->add_option("--out", c.out, "output prefix")->default_val(default_out);
}

void write_json(const std::string& path, const Json& j) { write_file(path, j.dump(1) + "\n"); }

template <class F>
void write_stream(const std::string& path, F&& f) {
  std::ostringstream os;
  f(os);
  write_file(path, os.str());
}

void write_columns(const std::string& path, const std::vector<std::pair<double, double>>& xy) {
  write_stream(path, [&](std::ostream& os) {
    for (const auto& [x, y] : xy) os << format_double(x) << ' ' << format_double(y) << '\n';
  });
}

int run_minimize(const Common& c, std::optional<double> h, std::optional<double> tau, std::optional<std::size_t> k0,
                 std::optional<int> refinements, std::optional<std::uint64_t> seed) {
  Json cfg = load_config(c.config);
  if (h) cfg["h"] = *h;
  if (tau) cfg["tau"] = *tau;
  if (k0) cfg["minimize"]["k0"] = *k0;
  if (refinements) cfg["minimize"]["refinements"] = *refinements;
  if (seed) cfg["minimize"]["seed"] = *seed;

  Masses m = config_masses(cfg);
  Configuration x = config_configuration(cfg, "x");
  Configuration y = config_configuration(cfg, "y");
  MinimizeOptions opts = config_minimize(cfg);

  bool converged = false;
  if (cfg.contains("tau")) {
    double t = cfg.at("tau").get<double>();
    if (!(t > 0.0)) throw ConfigError("config: 'tau' must be positive");
    auto r = minimize_fixed(x, y, t, m, opts);
    Json j = to_json(r);
    j["tau_star"] = t;
    write_json(c.out + ".json", j);
    write_stream(c.out + "_path.csv", [&](std::ostream& os) { write_path_csv(os, r.path); });
    converged = r.converged;
    std::cout << "value " << format_double(r.value) << "  converged " << r.converged << '\n';
  } else {
    double hv = config_h(cfg);
    if (!(hv > 0.0)) throw ConfigError("config: free-time solves need h > 0 (or give --tau)");
    auto r = minimize_free_time(x, y, EnergyLevel(hv), m, opts);
    write_json(c.out + ".json", to_json(r));
    write_stream(c.out + "_path.csv", [&](std::ostream& os) { write_path_csv(os, r.path); });
    converged = r.converged;
    std::cout << "value " << format_double(r.value) << "  tau* " << format_double(r.tau_star) << "  energy residual "
              << format_double(r.energy_residual) << "  converged " << r.converged << '\n';
  }
  return converged ? kOk : kNoConvergence;
}

int run_flow(const Common& c, std::optional<double> t_end, std::optional<double> rtol, std::size_t samples) {
  Json cfg = load_config(c.config);
  Masses m = config_masses(cfg);
  Configuration x = config_configuration(cfg, "x");
  TangentVector v = config_velocity(cfg, "v");
  double T = t_end ? *t_end : cfg.value("t_end", 0.0);
  double tol = rtol ? *rtol : cfg.value("rtol", 1e-10);
  if (!(T > 0.0)) throw ConfigError("config: need a positive --t-end");
  if (!(tol > 0.0)) throw ConfigError("config: need a positive --rtol");
  IntegrateOptions io;
  io.rtol = tol;
  if (samples > 1) io.sample_times = linspace(T / static_cast<double>(samples - 1), T, samples - 1);
  auto tr = integrate(State{x, v, 0.0}, m, T, io);
  write_stream(c.out + ".csv", [&](std::ostream& os) { write_trajectory_csv(os, tr); });
  write_json(c.out + ".json", to_json(tr));
  std::cout << "terminated by " << to_string(tr.terminated_by) << " at t = " << format_double(tr.t_end())
            << "  max energy drift " << format_double(tr.max_energy_drift) << '\n';
  return kOk;
}

int run_ray(const Common& c, std::optional<double> lambda) {
  Json cfg = load_config(c.config);
  Masses m = config_masses(cfg);
  double h = config_h(cfg);
  if (!(h > 0.0)) throw ConfigError("config: rays need h > 0");
  Configuration x0 = config_configuration(cfg, "x0");
  Configuration a = config_configuration(cfg, "a");
  a = normalize_direction(a, m, h);
  double L = lambda ? *lambda : cfg.value("lambda", 0.0);
  if (!(L > 0.0)) throw ConfigError("config: need a positive --lambda");
  auto ray = build_hyperbolic_ray(x0, a, m, h, L, config_minimize(cfg));
  write_json(c.out + ".json", to_json(ray));
  write_stream(c.out + "_path.csv", [&](std::ostream& os) { write_path_csv(os, ray.minimizer.path); });
  std::cout << "tau* " << format_double(ray.minimizer.tau_star) << "  tail angle " << format_double(ray.tail_angle)
            << "  sphere residual " << format_double(ray.sphere_residual) << "  converged " << ray.minimizer.converged
            << '\n';
  return ray.minimizer.converged ? kOk : kNoConvergence;
}

int run_horofn(const Common& c) {
  Json cfg = load_config(c.config);
  auto seq = config_sequence(cfg);
  auto lambdas = config_lambdas(cfg, seq);
  auto probes = config_probes(cfg);
  const Json& hs = cfg.at("horofunction");
  Json ref_view = {{"masses", cfg.at("masses")}, {"x_ref", hs.contains("x_ref") ? hs.at("x_ref") : cfg.at("x0")}};
  Configuration x_ref = config_configuration(ref_view, "x_ref");
  auto rep = estimate_horofunction(probes, x_ref, seq, lambdas, config_horofunction(cfg));
  write_json(c.out + ".json", to_json(rep));
  bool all_ok = true, converged = true;
  for (const auto& s : rep.samples) {
    all_ok = all_ok && s.ok;
    converged = converged && s.converged;
    std::cout << "n " << s.index << "  lambda " << format_double(s.lambda) << "  domination "
              << format_double(s.domination_residual) << "  calibration " << format_double(s.calib_residual)
              << (s.ok ? "" : "  error: " + s.error) << '\n';
  }
  std::cout << "cauchy decreasing " << rep.cauchy_decreasing << '\n';
  if (!all_ok) return kExperiment;
  return converged ? kOk : kNoConvergence;
}

int run_phmotion(const Common& c) {
  Json cfg = load_config(c.config);
  auto seq = config_sequence(cfg);
  Configuration x0 = config_configuration(cfg, "x0");
  double horizon = config_horizon(cfg);
  auto opts = config_experiment(cfg);
  auto rep = partially_hyperbolic_experiment(x0, seq, config_h(cfg), config_lambda_rule(cfg), horizon, opts);

  write_json(c.out + ".json", to_json(rep));
  write_stream(c.out + "_zeta.csv", [&](std::ostream& os) { write_trajectory_csv(os, rep.zeta); });
  const std::size_t n = x0.bodies();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<std::pair<double, double>> lin, lg;
      for (const State& s : rep.zeta.samples) {
        double r = 0.0;
        for (std::size_t k = 0; k < x0.dim(); ++k) r += std::pow(s.x(i, k) - s.x(j, k), 2);
        r = std::sqrt(r);
        lin.emplace_back(s.t, r);
        if (s.t > 0.0) lg.emplace_back(std::log(s.t), std::log(r));
      }
      std::string tag = "r" + std::to_string(i + 1) + std::to_string(j + 1);
      write_columns(c.out + "_" + tag + ".dat", lin);
      write_columns(c.out + "_log_" + tag + ".dat", lg);
    }
  for (std::size_t k = 0; k < x0.size(); ++k) {
    std::vector<std::pair<double, double>> av;
    for (std::size_t q = 0; q < seq.size(); ++q) av.emplace_back(seq.eps[q], seq.a[q].data()[k]);
    write_columns(c.out + "_a" + std::to_string(k / x0.dim() + 1) + "_" + std::to_string(k % x0.dim()) + ".dat", av);
  }

  const auto& p = rep.classification.primary();
  std::cout << "label " << to_string(rep.classification.label) << "  blocks";
  for (const auto& b : p.blocks) {
    std::cout << " {";
    for (std::size_t q = 0; q < b.size(); ++q) std::cout << (q ? "," : "") << b[q] + 1;
    std::cout << '}';
  }
  std::cout << "  margin " << format_double(p.margin) << "  energy drift " << format_double(rep.energy_drift)
            << "  cauchy decreasing " << rep.cauchy_decreasing << '\n';
  for (const auto& r : rep.rays)
    if (r.ok && !r.converged) return kNoConvergence;
  return kOk;
}

int run_probe(const Common& c) {
  Json cfg = load_config(c.config);
  auto fam = config_probe_family(cfg);
  Masses m = config_masses(cfg);
  Configuration b;
  if (cfg.contains("sequence")) b = config_sequence(cfg).b;
  auto table = continuity_probe_C(fam, m, b);
  write_stream(c.out + ".csv", [&](std::ostream& os) { write_probe_csv(os, table); });
  write_json(c.out + ".json", to_json(table));
  std::cout << "rows " << table.rows.size() << "  max jump " << format_double(table.max_jump) << "  max jump / step "
            << format_double(table.max_jump_per_step) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational N-body lab"};
  app.require_subcommand(1);

  Common mc, fc, rc, hc, pc, qc;
  std::optional<double> m_h, m_tau, f_tend, f_rtol, r_lambda;
  std::optional<std::size_t> m_k0;
  std::optional<int> m_ref;
  std::optional<std::uint64_t> m_seed;
  std::size_t f_samples = 1001;

  auto* minimize = app.add_subcommand("minimize", "fixed-time or free-time action minimizer");
  add_common(minimize, mc, "minimize");
  minimize->add_option("--energy", m_h, "energy level h");
  minimize->add_option("--tau", m_tau, "fixed duration (omit for a free-time solve)");
  minimize->add_option("--k0", m_k0, "intervals on the first grid");
  minimize->add_option("--refinements", m_ref, "mesh doublings");
  minimize->add_option("--seed", m_seed, "multistart seed");

  auto* flow = app.add_subcommand("flow", "integrate the equations of motion");
  add_common(flow, fc, "flow");
  flow->add_option("--t-end", f_tend, "final time");
  flow->add_option("--rtol", f_rtol, "relative tolerance");
  flow->add_option("--samples", f_samples, "number of uniformly spaced output samples");

  auto* ray = app.add_subcommand("ray", "free-time minimizer towards a direction");
  add_common(ray, rc, "ray");
  ray->add_option("--lambda", r_lambda, "distance scale of the target");

  auto* horofn = app.add_subcommand("horofn", "horofunction estimate along a direction sequence");
  add_common(horofn, hc, "horofn");
  auto* phmotion = app.add_subcommand("phmotion", "partially hyperbolic limit experiment");
  add_common(phmotion, pc, "phmotion");
  auto* probe = app.add_subcommand("probe-c", "final-configuration continuity probe");
  add_common(probe, qc, "probe");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc_parse = app.exit(e);
    return rc_parse == 0 ? kOk : kConfig;
  }

  try {
    if (*minimize) return run_minimize(mc, m_h, m_tau, m_k0, m_ref, m_seed);
    if (*flow) return run_flow(fc, f_tend, f_rtol, f_samples);
    if (*ray) return run_ray(rc, r_lambda);
    if (*horofn) return run_horofn(hc);
    if (*phmotion) return run_phmotion(pc);
    if (*probe) return run_probe(qc);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kConfig;
  } catch (const ExperimentError& e) {
    std::cerr << "experiment error: " << e.what() << '\n';
    return kExperiment;
  } catch (const BracketError& e) {
    std::cerr << "no convergence: " << e.what() << '\n';
    return kNoConvergence;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kConfig;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExperiment;
  }
  return kOk;
}
