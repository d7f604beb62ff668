#include <doctest.h>

#include <random>

#include "monocube/directed_laplacian.hpp"
#include "monocube/parallel.hpp"

using namespace monocube;

TEST_CASE("OpenMP kernels agree with the serial reference") {
  std::mt19937_64 rng(107);
  std::normal_distribution<double> gauss;
  for (unsigned n : {3u, 6u, 9u}) {
    const auto hn = WeightedDigraph::directed_hypercube(n);
    const std::int64_t nv = hn.vertex_count();
    for (int t = 0; t < 10; ++t) {
      std::vector<double> f(static_cast<std::size_t>(nv));
      for (auto& x : f) x = gauss(rng);

      std::vector<double> par_out(f.size()), ser_out(f.size());
      laplacian_apply(hn, f, par_out);
      reference::laplacian_apply(hn, f, ser_out);
      for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(par_out[i] == ser_out[i]);  // per-vertex kernels: identical sums

      const double ep = directed_energy(hn, f);
      const double es = reference::directed_energy(hn, f);
      CHECK(ep == doctest::Approx(es).epsilon(1e-13));
    }
  }
}

TEST_CASE("random weighted digraphs agree too") {
  std::mt19937_64 rng(109);
  std::uniform_real_distribution<double> unif(0.0, 2.0);
  std::normal_distribution<double> gauss;
  for (int t = 0; t < 20; ++t) {
    WeightedDigraph g(64);
    for (int e = 0; e < 400; ++e)
      g.add_edge(static_cast<std::int64_t>(rng() % 64), static_cast<std::int64_t>(rng() % 64),
                 unif(rng));
    std::vector<double> f(64);
    for (auto& x : f) x = gauss(rng);
    std::vector<double> a(64), b(64);
    laplacian_apply(g, f, a);
    reference::laplacian_apply(g, f, b);
    for (std::size_t i = 0; i < 64; ++i) CHECK(a[i] == b[i]);
    CHECK(directed_energy(g, f) ==
          doctest::Approx(reference::directed_energy(g, f)).epsilon(1e-13));
  }
}

TEST_CASE("chunked reduction is deterministic") {
  std::mt19937_64 rng(113);
  std::normal_distribution<double> gauss;
  std::vector<double> xs(100000);
  for (auto& x : xs) x = gauss(rng);
  const double s1 = par::sum_indexed(static_cast<std::int64_t>(xs.size()),
                                     [&](std::int64_t i) { return xs[static_cast<std::size_t>(i)]; });
  const double s2 = par::sum_indexed(static_cast<std::int64_t>(xs.size()),
                                     [&](std::int64_t i) { return xs[static_cast<std::size_t>(i)]; });
  CHECK(s1 == s2);
}
