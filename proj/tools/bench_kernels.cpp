// Timing comparison between the serial reference kernels and the OpenMP
// versions on directed hypercubes of growing dimension.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "monocube/directed_laplacian.hpp"
#include "monocube/heat_flow.hpp"
#include "monocube/parallel.hpp"

using namespace monocube;
using Clock = std::chrono::steady_clock;

namespace {

template <class F>
double time_best_of(int reps, F&& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    body();
    const auto t1 = Clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  par::init_threads_from_env();
  unsigned n_max = argc > 1 ? static_cast<unsigned>(std::atoi(argv[1])) : 18;
  std::printf("threads=%d\n", par::thread_count());
  std::printf("%4s %10s | %12s %12s %7s | %12s %12s %7s\n", "n", "arcs", "lap_serial",
              "lap_omp", "spdup", "en_serial", "en_omp", "spdup");

  volatile double sink = 0.0;
  for (unsigned n = 10; n <= n_max; n += 2) {
    const auto g = WeightedDigraph::directed_hypercube(n);
    g.ensure_built();
    std::mt19937_64 rng(n);
    std::normal_distribution<double> gauss;
    std::vector<double> f(static_cast<std::size_t>(g.vertex_count()));
    for (auto& x : f) x = gauss(rng);
    std::vector<double> out(f.size());

    const int reps = n <= 14 ? 20 : 5;
    const double ts = time_best_of(reps, [&] { reference::laplacian_apply(g, f, out); });
    const double tp = time_best_of(reps, [&] { laplacian_apply(g, f, out); });
    const double es = time_best_of(reps, [&] { sink = sink + reference::directed_energy(g, f); });
    const double ep = time_best_of(reps, [&] { sink = sink + directed_energy(g, f); });
    std::printf("%4u %10lld | %10.3fms %10.3fms %6.2fx | %10.3fms %10.3fms %6.2fx\n", n,
                static_cast<long long>(g.arc_count()), ts * 1e3, tp * 1e3, ts / tp,
                es * 1e3, ep * 1e3, es / ep);
  }

  // one end-to-end flow at moderate size
  {
    const unsigned n = 12;
    const auto g = WeightedDigraph::directed_hypercube(n);
    std::mt19937_64 rng(99);
    std::normal_distribution<double> gauss;
    std::vector<double> f(static_cast<std::size_t>(g.vertex_count()));
    for (auto& x : f) x = gauss(rng);
    FlowOptions opt;
    opt.record_stride = 1 << 30;
    const auto t0 = Clock::now();
    const auto res = heat_flow_solve(g, f, opt);
    const auto t1 = Clock::now();
    std::printf("flow n=%u: %lld steps in %.2f s (converged=%d)\n", n,
                static_cast<long long>(res.steps),
                std::chrono::duration<double>(t1 - t0).count(),
                static_cast<int>(res.converged));
  }
  return 0;
}
