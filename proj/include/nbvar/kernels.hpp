#pragma once

// Flat-array sweeps over discrete paths. The functions in nbvar::kernels are
// OpenMP-parallel over path nodes; nbvar::kernels::serial holds the plain
// reference loops they are tested against. Kernels never throw: collisions
// show up as a zero minimum distance and non-finite values, and callers decide.

#include <cstddef>
#include <span>

namespace nbvar::kernels {

/// Read-only view of K + 1 uniformly spaced nodes, each an N x d row-major block.
struct PathData {
  std::span<const double> nodes;
  std::span<const double> masses;
  std::size_t bodies = 0;
  std::size_t dim = 0;
  std::size_t intervals = 0;  // K
  double dt = 0.0;

  std::size_t stride() const noexcept { return bodies * dim; }
  const double* node(std::size_t k) const noexcept { return nodes.data() + k * stride(); }
};

struct PairScan {
  double distance;  // +inf when fewer than two bodies
  std::size_t i = 0, j = 0;
};

struct NodeScan {
  double distance;  // +inf when no pairs were scanned
  std::size_t node = 0, i = 0, j = 0;
};

struct ActionEval {
  double value = 0.0;
  double min_interior_distance = 0.0;
};

// Single configuration.
PairScan min_pair_distance(const double* x, std::size_t n, std::size_t d);
double potential_at(const double* x, const double* m, std::size_t n, std::size_t d);
/// Mass-metric gradient of U, written (not accumulated) into out.
void gradient_at(const double* x, const double* m, std::size_t n, std::size_t d, double* out);

// Path sweeps (OpenMP).
double action(const PathData& p);
/// Writes the mass-metric gradient at interior nodes 1..K-1 into grad
/// (size (K-1) * N * d) and reports the interior minimum distance.
ActionEval action_with_gradient(const PathData& p, std::span<double> grad);
NodeScan scan_distance(const PathData& p, bool interior_only);
double jm_length(const PathData& p, double h);
void energy_profile(const PathData& p, std::span<double> out);
/// Mass inner product of two stacks of configurations.
double mass_dot(std::span<const double> a, std::span<const double> b, std::span<const double> m,
                std::size_t dim);
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

namespace serial {
double action(const PathData& p);
ActionEval action_with_gradient(const PathData& p, std::span<double> grad);
NodeScan scan_distance(const PathData& p, bool interior_only);
double jm_length(const PathData& p, double h);
void energy_profile(const PathData& p, std::span<double> out);
double mass_dot(std::span<const double> a, std::span<const double> b, std::span<const double> m,
                std::size_t dim);
}  // namespace serial

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int max_threads();

}  // namespace nbvar::kernels
