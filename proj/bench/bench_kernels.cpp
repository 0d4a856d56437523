// Serial reference vs OpenMP path kernels on random three- and four-body paths.
#include <benchmark/benchmark.h>

#include <random>

#include "nbvar/action.hpp"
#include "nbvar/kernels.hpp"

using namespace nbvar;

namespace {

DiscretePath make_path(std::size_t n, std::size_t K) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Configuration x(n, 2), y(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    // Bodies on a circle, so no pair starts close.
    double a = 6.283185307179586 * static_cast<double>(i) / static_cast<double>(n);
    x(i, 0) = std::cos(a);
    x(i, 1) = std::sin(a);
    y(i, 0) = 3.0 * std::cos(a + 0.3);
    y(i, 1) = 3.0 * std::sin(a + 0.3);
  }
  auto p = DiscretePath::straight(x, y, 10.0, K, Masses(std::vector<double>(n, 1.0)));
  for (double& v : p.interior()) v += 0.01 * u(rng);
  return p;
}

template <bool Parallel>
void BM_action_gradient(benchmark::State& st) {
  auto p = make_path(static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(st.range(1)));
  std::vector<double> g((p.intervals() - 1) * p.stride());
  auto v = p.view();
  for (auto _ : st) {
    auto r = Parallel ? kernels::action_with_gradient(v, g) : kernels::serial::action_with_gradient(v, g);
    benchmark::DoNotOptimize(r);
  }
  st.SetItemsProcessed(st.iterations() * st.range(1));
  st.counters["threads"] = Parallel ? kernels::max_threads() : 1;
}

template <bool Parallel>
void BM_jm_length(benchmark::State& st) {
  auto p = make_path(static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(st.range(1)));
  auto v = p.view();
  for (auto _ : st) benchmark::DoNotOptimize(Parallel ? kernels::jm_length(v, 0.5) : kernels::serial::jm_length(v, 0.5));
  st.SetItemsProcessed(st.iterations() * st.range(1));
}

void sizes(benchmark::internal::Benchmark* b) {
  for (long n : {3, 4})
    for (long K : {1 << 8, 1 << 12, 1 << 16}) b->Args({n, K});
}

}  // namespace

BENCHMARK(BM_action_gradient<false>)->Name("action_gradient/serial")->Apply(sizes);
BENCHMARK(BM_action_gradient<true>)->Name("action_gradient/openmp")->Apply(sizes);
BENCHMARK(BM_jm_length<false>)->Name("jm_length/serial")->Apply(sizes);
BENCHMARK(BM_jm_length<true>)->Name("jm_length/openmp")->Apply(sizes);

BENCHMARK_MAIN();
