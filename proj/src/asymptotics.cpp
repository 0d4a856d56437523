#include "nbvar/asymptotics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace nbvar {

namespace {

std::vector<std::size_t> samples_in(const Trajectory& tr, FitWindow w) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < tr.samples.size(); ++k) {
    double t = tr.samples[k].t;
    if (t >= w.begin && t <= w.end) idx.push_back(k);
  }
  return idx;
}

void check_window(const Trajectory& tr, FitWindow w, const char* who) {
  if (tr.samples.empty()) throw InvalidArgument(std::string(who) + ": empty trajectory");
  if (!(w.begin > 0.0) || !(w.end > w.begin))
    throw InvalidArgument(std::string(who) + ": window must satisfy 0 < begin < end");
  double slack = 1e-12 * std::max(1.0, std::abs(tr.t_end()));
  if (w.begin < tr.t_begin() - slack || w.end > tr.t_end() + slack)
    throw InvalidArgument(std::string(who) + ": window outside the trajectory");
}

double pair_distance(const Configuration& x, std::size_t i, std::size_t j) {
  double s = 0.0;
  for (std::size_t c = 0; c < x.dim(); ++c) {
    double d = x(i, c) - x(j, c);
    s += d * d;
  }
  return std::sqrt(s);
}

double point_distance(const Configuration& a, std::size_t i, std::size_t j) { return pair_distance(a, i, j); }

}  // namespace

AsymptoticConfiguration fit_final_configuration(const Trajectory& tr, FitWindow window, FitModel model) {
  check_window(tr, window, "fit_final_configuration");
  auto idx = samples_in(tr, window);
  const std::size_t cols = model == FitModel::affine ? 2 : 4;
  if (idx.size() < cols + 1) throw InvalidArgument("fit_final_configuration: too few samples in window");

  const auto& m = tr.masses;
  const std::size_t n = tr.samples.front().x.bodies();
  const std::size_t d = tr.samples.front().x.dim();
  const std::size_t rows = idx.size();

  // Columns are scaled to unit max so the QR sees comparable magnitudes.
  const double te = window.end;
  Eigen::MatrixXd A(rows, cols);
  Eigen::MatrixXd B(rows, n * d);
  for (std::size_t r = 0; r < rows; ++r) {
    const State& s = tr.samples[idx[r]];
    double t = s.t;
    A(r, 0) = t / te;
    A(r, 1) = 1.0;
    if (cols == 4) {
      A(r, 2) = std::cbrt(t * t) / std::cbrt(te * te);
      A(r, 3) = std::log(t) / std::max(1.0, std::abs(std::log(te)));
    }
    for (std::size_t k = 0; k < n * d; ++k) B(r, k) = s.x.data()[k];
  }
  Eigen::MatrixXd coef = A.colPivHouseholderQr().solve(B);
  Eigen::MatrixXd resid = A * coef - B;

  AsymptoticConfiguration out;
  out.fit_window = window;
  out.a = Configuration(n, d);
  for (std::size_t k = 0; k < n * d; ++k) out.a.data()[k] = coef(0, k) / te;

  double ss = 0.0;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < d; ++c) ss += m[i] * resid(r, i * d + c) * resid(r, i * d + c);
  out.fit_residual = std::sqrt(ss / static_cast<double>(rows)) / te;
  out.energy_of_a = 0.5 * mass_inner(out.a, out.a, m);
  return out;
}

ClusterPartition detect_clusters(const Configuration& a, double rel_tol) {
  if (!(rel_tol >= 0.0)) throw InvalidArgument("detect_clusters: rel_tol must be >= 0");
  const std::size_t n = a.bodies();
  ClusterPartition out;
  if (n == 0) return out;

  double diam = diameter(a);
  double mag = 0.0;
  for (double v : a.data()) mag = std::max(mag, std::abs(v));
  if (!(diam > 1e-14 * mag) || diam == 0.0) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    out.blocks.push_back(std::move(all));
    out.separation_margin = 0.0;
    return out;
  }

  const double thr = rel_tol * diam;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (point_distance(a, i, j) <= thr) {
        std::size_t ri = find(i), rj = find(j);
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
      }

  std::vector<std::size_t> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = find(i);
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] != i) continue;
    std::vector<std::size_t> block;
    for (std::size_t j = i; j < n; ++j)
      if (label[j] == i) block.push_back(j);
    out.blocks.push_back(std::move(block));
  }

  if (out.blocks.size() < 2) {
    out.separation_margin = 0.0;
    return out;
  }
  double inter = std::numeric_limits<double>::infinity(), intra = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double dist = point_distance(a, i, j);
      if (label[i] == label[j])
        intra = std::max(intra, dist);
      else
        inter = std::min(inter, dist);
    }
  out.separation_margin = inter / std::max(intra, thr);
  return out;
}

double growth_exponent(const Trajectory& tr, std::pair<std::size_t, std::size_t> pair, FitWindow window) {
  check_window(tr, window, "growth_exponent");
  const std::size_t n = tr.samples.front().x.bodies();
  if (pair.first >= n || pair.second >= n || pair.first == pair.second)
    throw InvalidArgument("growth_exponent: bad body pair");
  auto idx = samples_in(tr, window);
  if (idx.size() < 2) throw InvalidArgument("growth_exponent: fewer than two samples in window");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k : idx) {
    double r = pair_distance(tr.samples[k].x, pair.first, pair.second);
    if (!(r > 0.0)) throw InvalidArgument("growth_exponent: zero distance in window");
    double lx = std::log(tr.samples[k].t), ly = std::log(r);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double cnt = static_cast<double>(idx.size());
  double den = cnt * sxx - sx * sx;
  if (!(den > 0.0)) throw InvalidArgument("growth_exponent: degenerate window");
  return (cnt * sxy - sx * sy) / den;
}

std::string to_string(MotionClass c) {
  switch (c) {
    case MotionClass::hyperbolic: return "hyperbolic";
    case MotionClass::partially_hyperbolic: return "partially_hyperbolic";
    case MotionClass::unresolved: return "unresolved";
  }
  return "unresolved";
}

MotionClass motion_class_from_string(const std::string& s) {
  if (s == "hyperbolic") return MotionClass::hyperbolic;
  if (s == "partially_hyperbolic") return MotionClass::partially_hyperbolic;
  if (s == "unresolved") return MotionClass::unresolved;
  throw InvalidArgument("unknown motion class '" + s + "'");
}

namespace {

WindowAnalysis analyse_window(const Trajectory& tr, FitWindow w, const ClassifyOptions& opts) {
  WindowAnalysis wa;
  wa.window = w;
  auto fit = fit_final_configuration(tr, w, opts.model);
  wa.a = fit.a;
  wa.residual = fit.fit_residual;
  wa.energy_of_a = fit.energy_of_a;
  auto part = detect_clusters(fit.a, opts.cluster_rel_tol);
  wa.blocks = part.blocks;
  wa.margin = part.separation_margin;

  const std::size_t n = fit.a.bodies();
  std::vector<std::size_t> block_of(n);
  for (std::size_t b = 0; b < part.blocks.size(); ++b)
    for (std::size_t i : part.blocks[b]) block_of[i] = b;

  bool exponents_ok = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      PairExponent pe{i, j, 0.0, block_of[i] == block_of[j]};
      try {
        pe.exponent = growth_exponent(tr, {i, j}, w);
      } catch (const InvalidArgument&) {
        pe.exponent = std::numeric_limits<double>::quiet_NaN();
        exponents_ok = false;
      }
      wa.exponents.push_back(pe);
    }

  const double h = tr.h;
  bool energy_ok = h > 0.0 && std::abs(fit.energy_of_a - h) <= opts.energy_rel_tol * h;
  bool separated = part.separation_margin > opts.min_margin;
  bool singletons = std::all_of(part.blocks.begin(), part.blocks.end(), [](const auto& b) { return b.size() == 1; });

  wa.label = MotionClass::unresolved;
  if (!energy_ok || !separated) return wa;
  if (singletons) {
    wa.label = MotionClass::hyperbolic;
  } else if (part.blocks.size() >= 2 && exponents_ok) {
    bool linear = std::all_of(wa.exponents.begin(), wa.exponents.end(), [&](const PairExponent& pe) {
      return pe.same_cluster || std::abs(pe.exponent - 1.0) <= opts.exponent_tol;
    });
    if (linear) wa.label = MotionClass::partially_hyperbolic;
  }
  return wa;
}

}  // namespace

ClassificationReport classify_motion(const Trajectory& tr, const std::vector<FitWindow>& windows,
                                     const ClassifyOptions& opts) {
  if (windows.empty()) throw InvalidArgument("classify_motion: no windows");
  ClassificationReport rep;
  rep.h = tr.h;
  for (const auto& w : windows) {
    try {
      rep.windows.push_back(analyse_window(tr, w, opts));
    } catch (const InvalidArgument&) {
      WindowAnalysis wa;
      wa.window = w;
      rep.windows.push_back(std::move(wa));
    }
  }
  rep.label = rep.windows.front().label;
  for (const auto& wa : rep.windows)
    if (wa.label != rep.label || wa.blocks != rep.windows.front().blocks) rep.label = MotionClass::unresolved;
  return rep;
}

std::vector<FitWindow> default_windows(double horizon) {
  return {{horizon / 20.0, horizon / 2.0}, {horizon / 10.0, horizon}};
}

std::vector<double> window_sample_times(const std::vector<FitWindow>& windows, std::size_t per_window,
                                        double t_end, std::size_t uniform) {
  std::vector<double> ts;
  for (const auto& w : windows) {
    auto l = logspace(w.begin, w.end, per_window);
    ts.insert(ts.end(), l.begin(), l.end());
  }
  if (uniform > 1) {
    auto u = linspace(0.0, t_end, uniform);
    ts.insert(ts.end(), u.begin(), u.end());
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  while (!ts.empty() && ts.back() > t_end) ts.pop_back();
  ts.erase(ts.begin(), std::upper_bound(ts.begin(), ts.end(), 0.0));
  return ts;
}

}  // namespace nbvar
