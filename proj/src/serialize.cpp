#include "nbvar/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace nbvar {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw InvalidArgument("not a number: '" + std::string(s) + "'");
  return v;
}

Json number_to_json(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_double(j.get<std::string>());
  throw InvalidArgument("expected a number, got " + j.dump());
}

namespace {

Json numbers(std::span<const double> xs) {
  Json a = Json::array();
  for (double v : xs) a.push_back(number_to_json(v));
  return a;
}

std::vector<double> numbers_from(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(number_from_json(v));
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t size_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw InvalidArgument(std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

template <class Tag>
Json matrix_to_json(const BodyMatrix<Tag>& x) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < x.bodies(); ++i) rows.push_back(numbers(x.body(i)));
  return rows;
}

template <class Tag>
BodyMatrix<Tag> matrix_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("expected an array of body vectors");
  if (j.empty()) return {};
  std::size_t d = j.front().size();
  std::vector<double> data;
  for (const auto& row : j) {
    auto r = numbers_from(row);
    if (r.size() != d) throw InvalidArgument("ragged body matrix");
    data.insert(data.end(), r.begin(), r.end());
  }
  return BodyMatrix<Tag>(j.size(), d, std::move(data));
}

Json blocks_to_json(const std::vector<std::vector<std::size_t>>& b) {
  Json out = Json::array();
  for (const auto& blk : b) out.push_back(blk);
  return out;
}

std::vector<std::vector<std::size_t>> blocks_from_json(const Json& j) {
  return j.get<std::vector<std::vector<std::size_t>>>();
}

}  // namespace

Json to_json(const Masses& m) { return numbers(m.values()); }
Masses masses_from_json(const Json& j) { return Masses(numbers_from(j)); }

Json to_json(const Configuration& x) { return matrix_to_json(x); }
Json to_json(const TangentVector& v) { return matrix_to_json(v); }
Configuration configuration_from_json(const Json& j) { return matrix_from_json<PositionTag>(j); }
TangentVector tangent_from_json(const Json& j) { return matrix_from_json<VelocityTag>(j); }

Json to_json(const DiscretePath& p) {
  Json nodes = Json::array();
  for (std::size_t k = 0; k <= p.intervals(); ++k) nodes.push_back(numbers(p.node_data(k)));
  return {{"masses", to_json(p.masses())}, {"dim", p.dim()}, {"times", numbers(p.times())}, {"nodes", nodes}};
}

DiscretePath path_from_json(const Json& j) {
  Masses m = masses_from_json(field(j, "masses"));
  std::size_t d = size_field(j, "dim");
  auto times = numbers_from(field(j, "times"));
  const Json& nodes = field(j, "nodes");
  if (!nodes.is_array() || nodes.size() != times.size()) throw InvalidArgument("path: one node row per time");
  std::vector<double> x;
  x.reserve(times.size() * m.size() * d);
  for (const auto& row : nodes) {
    auto r = numbers_from(row);
    if (r.size() != m.size() * d) throw InvalidArgument("path: node row has the wrong length");
    x.insert(x.end(), r.begin(), r.end());
  }
  return DiscretePath(std::move(m), d, std::move(times), std::move(x));
}

Json to_json(const FixedTimeResult& r) {
  return {{"value", number_to_json(r.value)},
          {"grad_norm", number_to_json(r.grad_norm)},
          {"converged", r.converged},
          {"min_interior_distance", number_to_json(r.min_interior_distance)},
          {"iterations", r.iterations},
          {"path", to_json(r.path)}};
}

FixedTimeResult fixed_time_result_from_json(const Json& j) {
  FixedTimeResult r;
  r.value = number_from_json(field(j, "value"));
  r.grad_norm = number_from_json(field(j, "grad_norm"));
  r.converged = field(j, "converged").get<bool>();
  r.min_interior_distance = number_from_json(field(j, "min_interior_distance"));
  r.iterations = field(j, "iterations").get<int>();
  r.path = path_from_json(field(j, "path"));
  return r;
}

Json to_json(const FreeTimeResult& r) {
  Json samples = Json::array();
  for (const auto& [tau, g] : r.samples) samples.push_back({number_to_json(tau), number_to_json(g)});
  return {{"value", number_to_json(r.value)},
          {"tau_star", number_to_json(r.tau_star)},
          {"energy_residual", number_to_json(r.energy_residual)},
          {"converged", r.converged},
          {"degenerate", r.degenerate},
          {"grad_norm", number_to_json(r.grad_norm)},
          {"samples", samples},
          {"path", to_json(r.path)}};
}

FreeTimeResult free_time_result_from_json(const Json& j) {
  FreeTimeResult r;
  r.value = number_from_json(field(j, "value"));
  r.tau_star = number_from_json(field(j, "tau_star"));
  r.energy_residual = number_from_json(field(j, "energy_residual"));
  r.converged = field(j, "converged").get<bool>();
  r.degenerate = j.value("degenerate", false);
  if (j.contains("grad_norm")) r.grad_norm = number_from_json(j.at("grad_norm"));
  if (j.contains("samples"))
    for (const auto& s : j.at("samples")) r.samples.emplace_back(number_from_json(s.at(0)), number_from_json(s.at(1)));
  r.path = path_from_json(field(j, "path"));
  return r;
}

Json to_json(const Trajectory& tr) {
  Json t = Json::array(), x = Json::array(), v = Json::array();
  for (const State& s : tr.samples) {
    t.push_back(number_to_json(s.t));
    x.push_back(numbers(s.x.data()));
    v.push_back(numbers(s.v.data()));
  }
  std::size_t d = tr.samples.empty() ? 0 : tr.samples.front().x.dim();
  return {{"masses", to_json(tr.masses)},
          {"dim", d},
          {"h", number_to_json(tr.h)},
          {"omega_plus", number_to_json(tr.omega_plus)},
          {"terminated_by", to_string(tr.terminated_by)},
          {"max_energy_drift", number_to_json(tr.max_energy_drift)},
          {"accepted_steps", tr.accepted_steps},
          {"rejected_steps", tr.rejected_steps},
          {"t", t},
          {"x", x},
          {"v", v}};
}

Trajectory trajectory_from_json(const Json& j) {
  Trajectory tr;
  tr.masses = masses_from_json(field(j, "masses"));
  std::size_t d = size_field(j, "dim");
  std::size_t n = tr.masses.size();
  tr.h = number_from_json(field(j, "h"));
  tr.omega_plus = number_from_json(field(j, "omega_plus"));
  tr.terminated_by = termination_from_string(field(j, "terminated_by").get<std::string>());
  tr.max_energy_drift = number_from_json(field(j, "max_energy_drift"));
  tr.accepted_steps = size_field(j, "accepted_steps");
  tr.rejected_steps = size_field(j, "rejected_steps");
  auto t = numbers_from(field(j, "t"));
  const Json& x = field(j, "x");
  const Json& v = field(j, "v");
  if (x.size() != t.size() || v.size() != t.size()) throw InvalidArgument("trajectory: column lengths differ");
  for (std::size_t k = 0; k < t.size(); ++k)
    tr.samples.push_back(State{Configuration(n, d, numbers_from(x[k])), TangentVector(n, d, numbers_from(v[k])), t[k]});
  return tr;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  std::size_t n = tr.masses.size();
  std::size_t d = tr.samples.empty() ? 0 : tr.samples.front().x.dim();
  os << "# masses:";
  for (double m : tr.masses.values()) os << ' ' << format_double(m);
  os << "\n# dim: " << d << "\n# h: " << format_double(tr.h) << "\n# omega_plus: " << format_double(tr.omega_plus)
     << "\n# terminated_by: " << to_string(tr.terminated_by)
     << "\n# max_energy_drift: " << format_double(tr.max_energy_drift) << "\n# accepted_steps: " << tr.accepted_steps
     << "\n# rejected_steps: " << tr.rejected_steps << '\n';
  os << 't';
  for (const char* p : {"x", "v"})
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < d; ++c) os << ',' << p << i << '_' << c;
  os << ",energy\n";
  for (const State& s : tr.samples) {
    os << format_double(s.t);
    for (double q : s.x.data()) os << ',' << format_double(q);
    for (double q : s.v.data()) os << ',' << format_double(q);
    os << ',' << format_double(energy(s, tr.masses)) << '\n';
  }
}

Trajectory read_trajectory_csv(std::istream& is) {
  Trajectory tr;
  std::size_t d = 0;
  bool header = false;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      std::string key = line.substr(2, colon - 2);
      std::string val = line.substr(colon + 1);
      std::istringstream vs(val);
      std::string tok;
      if (key == "masses") {
        std::vector<double> m;
        while (vs >> tok) m.push_back(parse_double(tok));
        tr.masses = Masses(std::move(m));
      } else if (vs >> tok) {
        if (key == "dim") d = static_cast<std::size_t>(std::stoul(tok));
        else if (key == "h") tr.h = parse_double(tok);
        else if (key == "omega_plus") tr.omega_plus = parse_double(tok);
        else if (key == "terminated_by") tr.terminated_by = termination_from_string(tok);
        else if (key == "max_energy_drift") tr.max_energy_drift = parse_double(tok);
        else if (key == "accepted_steps") tr.accepted_steps = std::stoull(tok);
        else if (key == "rejected_steps") tr.rejected_steps = std::stoull(tok);
      }
      continue;
    }
    if (!header) {
      header = true;
      continue;
    }
    const std::size_t nd = tr.masses.size() * d;
    std::vector<double> row;
    std::string_view rest(line);
    while (true) {
      auto comma = rest.find(',');
      row.push_back(parse_double(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (row.size() != 2 * nd + 2) throw InvalidArgument("trajectory csv: wrong number of columns");
    State s;
    s.t = row[0];
    s.x = Configuration(tr.masses.size(), d, std::vector<double>(row.begin() + 1, row.begin() + 1 + nd));
    s.v = TangentVector(tr.masses.size(), d, std::vector<double>(row.begin() + 1 + nd, row.begin() + 1 + 2 * nd));
    tr.samples.push_back(std::move(s));
  }
  if (!header) throw InvalidArgument("trajectory csv: no header");
  return tr;
}

void write_path_csv(std::ostream& os, const DiscretePath& p) {
  os << 't';
  for (std::size_t i = 0; i < p.bodies(); ++i)
    for (std::size_t c = 0; c < p.dim(); ++c) os << ",x" << i << '_' << c;
  os << '\n';
  for (std::size_t k = 0; k <= p.intervals(); ++k) {
    os << format_double(p.times()[k]);
    for (double q : p.node_data(k)) os << ',' << format_double(q);
    os << '\n';
  }
}

Json to_json(const ClassificationReport& r) {
  Json windows = Json::array(), margins = Json::array(), residuals = Json::array(), exponents = Json::array();
  Json labels = Json::array(), energies = Json::array(), all_a = Json::array(), all_blocks = Json::array();
  for (const auto& w : r.windows) {
    windows.push_back({number_to_json(w.window.begin), number_to_json(w.window.end)});
    margins.push_back(number_to_json(w.margin));
    residuals.push_back(number_to_json(w.residual));
    labels.push_back(to_string(w.label));
    energies.push_back(number_to_json(w.energy_of_a));
    all_a.push_back(to_json(w.a));
    all_blocks.push_back(blocks_to_json(w.blocks));
    Json ex = Json::array();
    for (const auto& e : w.exponents)
      ex.push_back({{"i", e.i}, {"j", e.j}, {"exponent", number_to_json(e.exponent)}, {"same_cluster", e.same_cluster}});
    exponents.push_back(ex);
  }
  Json out = {{"label", to_string(r.label)},
              {"h", number_to_json(r.h)},
              {"a", r.windows.empty() ? Json::array() : to_json(r.primary().a)},
              {"blocks", r.windows.empty() ? Json::array() : blocks_to_json(r.primary().blocks)},
              {"margins", margins},
              {"exponents", exponents},
              {"windows", windows},
              {"residuals", residuals},
              {"window_labels", labels},
              {"window_energy_of_a", energies},
              {"window_a", all_a},
              {"window_blocks", all_blocks}};
  return out;
}

ClassificationReport classification_from_json(const Json& j) {
  ClassificationReport r;
  r.label = motion_class_from_string(field(j, "label").get<std::string>());
  r.h = number_from_json(field(j, "h"));
  const Json& windows = field(j, "windows");
  for (std::size_t k = 0; k < windows.size(); ++k) {
    WindowAnalysis w;
    w.window = {number_from_json(windows[k].at(0)), number_from_json(windows[k].at(1))};
    w.margin = number_from_json(field(j, "margins").at(k));
    w.residual = number_from_json(field(j, "residuals").at(k));
    w.label = motion_class_from_string(field(j, "window_labels").at(k).get<std::string>());
    w.energy_of_a = number_from_json(field(j, "window_energy_of_a").at(k));
    w.a = configuration_from_json(field(j, "window_a").at(k));
    w.blocks = blocks_from_json(field(j, "window_blocks").at(k));
    for (const auto& e : field(j, "exponents").at(k))
      w.exponents.push_back({e.at("i").get<std::size_t>(), e.at("j").get<std::size_t>(),
                             number_from_json(e.at("exponent")), e.at("same_cluster").get<bool>()});
    r.windows.push_back(std::move(w));
  }
  return r;
}

Json to_json(const HyperbolicRay& r) {
  return {{"lambda", number_to_json(r.lambda)},
          {"target", to_json(r.target)},
          {"v0", to_json(r.v0)},
          {"tail_angle", number_to_json(r.tail_angle)},
          {"sphere_residual", number_to_json(r.sphere_residual)},
          {"minimizer", to_json(r.minimizer)}};
}

Json to_json(const HorofunctionReport& r) {
  Json samples = Json::array();
  for (const auto& s : r.samples)
    samples.push_back({{"index", s.index},
                       {"eps", number_to_json(s.eps)},
                       {"lambda", number_to_json(s.lambda)},
                       {"p", to_json(s.p)},
                       {"ok", s.ok},
                       {"error", s.error},
                       {"phi_ref", number_to_json(s.phi_ref)},
                       {"phi_probe", numbers(s.phi_probe)},
                       {"u_values", numbers(s.u_values)},
                       {"cauchy", numbers(s.cauchy)},
                       {"domination_residual", number_to_json(s.domination_residual)},
                       {"calib_residual", number_to_json(s.calib_residual)},
                       {"calib_time", number_to_json(s.calib_time)},
                       {"converged", s.converged}});
  Json pairs = Json::array();
  for (const auto& row : r.phi_pairs) pairs.push_back(numbers(row));
  return {{"samples", samples},
          {"phi_pairs", pairs},
          {"max_domination", number_to_json(r.max_domination)},
          {"max_calibration", number_to_json(r.max_calibration)},
          {"cauchy_decreasing", r.cauchy_decreasing}};
}

HorofunctionReport horofunction_from_json(const Json& j) {
  HorofunctionReport r;
  for (const auto& s : field(j, "samples")) {
    HorofunctionSample h;
    h.index = s.at("index").get<std::size_t>();
    h.eps = number_from_json(s.at("eps"));
    h.lambda = number_from_json(s.at("lambda"));
    h.p = configuration_from_json(s.at("p"));
    h.ok = s.at("ok").get<bool>();
    h.error = s.at("error").get<std::string>();
    h.phi_ref = number_from_json(s.at("phi_ref"));
    h.phi_probe = numbers_from(s.at("phi_probe"));
    h.u_values = numbers_from(s.at("u_values"));
    h.cauchy = numbers_from(s.at("cauchy"));
    h.domination_residual = number_from_json(s.at("domination_residual"));
    h.calib_residual = number_from_json(s.at("calib_residual"));
    h.calib_time = number_from_json(s.at("calib_time"));
    h.converged = s.at("converged").get<bool>();
    r.samples.push_back(std::move(h));
  }
  for (const auto& row : field(j, "phi_pairs")) r.phi_pairs.push_back(numbers_from(row));
  r.max_domination = number_from_json(field(j, "max_domination"));
  r.max_calibration = number_from_json(field(j, "max_calibration"));
  r.cauchy_decreasing = field(j, "cauchy_decreasing").get<bool>();
  return r;
}

Json to_json(const ExperimentReport& r, bool include_zeta) {
  Json rays = Json::array();
  for (const auto& ray : r.rays)
    rays.push_back({{"index", ray.index},
                    {"eps", number_to_json(ray.eps)},
                    {"lambda", number_to_json(ray.lambda)},
                    {"ok", ray.ok},
                    {"error", ray.error},
                    {"tau_star", number_to_json(ray.tau_star)},
                    {"value", number_to_json(ray.value)},
                    {"energy_residual", number_to_json(ray.energy_residual)},
                    {"converged", ray.converged},
                    {"sphere_residual", number_to_json(ray.sphere_residual)},
                    {"tail_angle", number_to_json(ray.tail_angle)},
                    {"v", to_json(ray.v)}});
  Json out = {{"h", number_to_json(r.h)},
              {"horizon", number_to_json(r.horizon)},
              {"rays", rays},
              {"cauchy", numbers(r.cauchy)},
              {"cauchy_decreasing", r.cauchy_decreasing},
              {"v_raw", to_json(r.v_raw)},
              {"v", to_json(r.v)},
              {"projection_shift", number_to_json(r.projection_shift)},
              {"energy_drift", number_to_json(r.energy_drift)},
              {"com_drift", number_to_json(r.com_drift)},
              {"zeta_terminated_by", to_string(r.zeta.terminated_by)},
              {"zeta_max_energy_drift", number_to_json(r.zeta.max_energy_drift)},
              {"label", to_string(r.classification.label)},
              {"classification", to_json(r.classification)},
              {"b_prime", to_json(r.b_prime)},
              {"G_b_prime", number_to_json(r.G_b_prime)},
              {"energy_b_prime", number_to_json(r.energy_b_prime)}};
  if (include_zeta) out["zeta"] = to_json(r.zeta);
  return out;
}

ExperimentReport experiment_from_json(const Json& j) {
  ExperimentReport r;
  r.h = number_from_json(field(j, "h"));
  r.horizon = number_from_json(field(j, "horizon"));
  for (const auto& x : field(j, "rays")) {
    RayRecord ray;
    ray.index = x.at("index").get<std::size_t>();
    ray.eps = number_from_json(x.at("eps"));
    ray.lambda = number_from_json(x.at("lambda"));
    ray.ok = x.at("ok").get<bool>();
    ray.error = x.at("error").get<std::string>();
    ray.tau_star = number_from_json(x.at("tau_star"));
    ray.value = number_from_json(x.at("value"));
    ray.energy_residual = number_from_json(x.at("energy_residual"));
    ray.converged = x.at("converged").get<bool>();
    ray.sphere_residual = number_from_json(x.at("sphere_residual"));
    ray.tail_angle = number_from_json(x.at("tail_angle"));
    ray.v = tangent_from_json(x.at("v"));
    r.rays.push_back(std::move(ray));
  }
  r.cauchy = numbers_from(field(j, "cauchy"));
  r.cauchy_decreasing = field(j, "cauchy_decreasing").get<bool>();
  r.v_raw = tangent_from_json(field(j, "v_raw"));
  r.v = tangent_from_json(field(j, "v"));
  r.projection_shift = number_from_json(field(j, "projection_shift"));
  r.energy_drift = number_from_json(field(j, "energy_drift"));
  r.com_drift = number_from_json(field(j, "com_drift"));
  r.classification = classification_from_json(field(j, "classification"));
  r.b_prime = configuration_from_json(field(j, "b_prime"));
  r.G_b_prime = number_from_json(field(j, "G_b_prime"));
  r.energy_b_prime = number_from_json(field(j, "energy_b_prime"));
  if (j.contains("zeta")) r.zeta = trajectory_from_json(j.at("zeta"));
  return r;
}

Json to_json(const ProbeTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"s", number_to_json(r.s)},
                    {"ok", r.ok},
                    {"error", r.error},
                    {"a", to_json(r.a)},
                    {"fit_residual", number_to_json(r.fit_residual)},
                    {"energy_of_a", number_to_json(r.energy_of_a)},
                    {"distance_to_b", number_to_json(r.distance_to_b)}});
  return {{"rows", rows},
          {"max_jump", number_to_json(t.max_jump)},
          {"max_jump_per_step", number_to_json(t.max_jump_per_step)}};
}

ProbeTable probe_table_from_json(const Json& j) {
  ProbeTable t;
  for (const auto& x : field(j, "rows")) {
    ProbeRow r;
    r.s = number_from_json(x.at("s"));
    r.ok = x.at("ok").get<bool>();
    r.error = x.at("error").get<std::string>();
    r.a = configuration_from_json(x.at("a"));
    r.fit_residual = number_from_json(x.at("fit_residual"));
    r.energy_of_a = number_from_json(x.at("energy_of_a"));
    r.distance_to_b = number_from_json(x.at("distance_to_b"));
    t.rows.push_back(std::move(r));
  }
  t.max_jump = number_from_json(field(j, "max_jump"));
  t.max_jump_per_step = number_from_json(field(j, "max_jump_per_step"));
  return t;
}

void write_probe_csv(std::ostream& os, const ProbeTable& t) {
  std::size_t n = 0, d = 0;
  for (const auto& r : t.rows)
    if (r.ok) {
      n = r.a.bodies();
      d = r.a.dim();
      break;
    }
  os << "s,ok,fit_residual,energy_of_a,distance_to_b";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < d; ++c) os << ",a" << i << '_' << c;
  os << '\n';
  for (const auto& r : t.rows) {
    os << format_double(r.s) << ',' << (r.ok ? 1 : 0) << ',' << format_double(r.fit_residual) << ','
       << format_double(r.energy_of_a) << ',' << format_double(r.distance_to_b);
    for (std::size_t k = 0; k < n * d; ++k) os << ',' << (r.ok ? format_double(r.a.data()[k]) : "nan");
    os << '\n';
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace nbvar
