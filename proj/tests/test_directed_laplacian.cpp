#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>

#include "monocube/directed_laplacian.hpp"
#include "monocube/errors.hpp"
#include "monocube/spectral_estimate.hpp"

using namespace monocube;

namespace {

std::vector<double> random_state(std::int64_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<double> f(static_cast<std::size_t>(n));
  for (auto& x : f) x = gauss(rng);
  return f;
}

std::vector<double> anti_dictator(unsigned n) {
  std::vector<double> g(std::size_t{1} << n);
  for (std::size_t x = 0; x < g.size(); ++x) g[x] = -(double)(x & 1u);
  return g;
}

}  // namespace

TEST_CASE("single violating edge on H_1") {
  const auto h1 = WeightedDigraph::directed_hypercube(1);
  const std::vector<double> f{1.0, 0.0};
  const auto lf = laplacian_apply(h1, f);
  CHECK(lf[0] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(lf[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(directed_energy(h1, f) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(norm_sq_avg(lf) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(gap_ratio(h1, f) == doctest::Approx(1.0).epsilon(1e-14));

  // energy equals -<f, L⁻f>
  CHECK(-inner_avg(f, lf) == doctest::Approx(directed_energy(h1, f)).epsilon(1e-14));
}

TEST_CASE("monotone and constant states are stationary") {
  const auto h3 = WeightedDigraph::directed_hypercube(3);
  std::vector<double> mono(8);
  for (std::size_t x = 0; x < 8; ++x) mono[x] = static_cast<double>(std::popcount(x));
  for (double v : laplacian_apply(h3, mono)) CHECK(v == 0.0);
  CHECK(directed_energy(h3, mono) == 0.0);
  CHECK(is_monotone_on(h3, mono));
  CHECK_THROWS_AS(gap_ratio(h3, mono), MonocubeError);

  const std::vector<double> c(8, 3.7);
  for (double v : laplacian_apply(h3, c)) CHECK(v == 0.0);
}

TEST_CASE("anti-dictator achieves ratio one") {
  for (unsigned n : {2u, 4u, 6u}) {
    const auto hn = WeightedDigraph::directed_hypercube(n);
    const auto g = anti_dictator(n);
    CHECK(directed_energy(hn, g) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(gap_ratio(hn, g) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("hypercube gap ratio is at least one") {
  std::mt19937_64 rng(42);
  for (unsigned n : {1u, 2u, 3u, 4u, 5u}) {
    const auto hn = WeightedDigraph::directed_hypercube(n);
    for (int t = 0; t < 200; ++t) {
      const auto f = random_state(hn.vertex_count(), rng);
      if (directed_energy(hn, f) <= 0.0) continue;
      CHECK(gap_ratio(hn, f) >= 1.0 - 1e-9);
    }
  }
}

TEST_CASE("energy minus inner product identity on random digraphs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    WeightedDigraph g(8);
    for (int e = 0; e < 20; ++e) {
      const auto u = static_cast<std::int64_t>(rng() % 8);
      const auto v = static_cast<std::int64_t>(rng() % 8);
      if (u != v) g.add_edge(u, v, unif(rng));
    }
    const auto f = random_state(8, rng);
    const auto lf = laplacian_apply(g, f);
    CHECK(-inner_avg(f, lf) == doctest::Approx(directed_energy(g, f)).epsilon(1e-12));
  }
}

TEST_CASE("coordinate decomposition") {
  std::mt19937_64 rng(3);
  for (unsigned n : {2u, 3u, 4u}) {
    const auto hn = WeightedDigraph::directed_hypercube(n);
    for (int t = 0; t < 50; ++t) {
      const auto f = random_state(hn.vertex_count(), rng);
      const auto parts = coordinate_laplacians(n, f);
      REQUIRE(parts.size() == n);
      const auto lf = laplacian_apply(hn, f);
      for (std::size_t x = 0; x < f.size(); ++x) {
        double sum = 0.0;
        for (const auto& li : parts) sum += li[x];
        CHECK(sum == doctest::Approx(lf[x]).epsilon(1e-12));
      }
      // per-coordinate norm equals per-coordinate energy; cross terms nonneg
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j)
          CHECK(inner_avg(parts[i], parts[j]) >= -1e-15);
    }
  }
}

TEST_CASE("single violation on a specific n=2 edge") {
  // f violates only the coordinate-1 edge 01 -> 11 (indices 2 -> 3)
  const std::vector<double> f{0.0, 0.0, 1.0, 0.0};
  const auto parts = coordinate_laplacians(2, f);
  CHECK(parts[0][2] == doctest::Approx(-0.5));
  CHECK(parts[0][3] == doctest::Approx(0.5));
  CHECK(parts[0][0] == 0.0);
  CHECK(parts[0][1] == 0.0);
  for (double v : parts[1]) CHECK(v == 0.0);
}

TEST_CASE("gradient identity at generic states") {
  std::mt19937_64 rng(11);
  const unsigned n = 3;
  const auto hn = WeightedDigraph::directed_hypercube(n);
  const std::int64_t nv = hn.vertex_count();
  int checked = 0;
  while (checked < 20) {
    auto f = random_state(nv, rng);
    // generic position: all edge differences bounded away from zero
    double min_gap = 1e9;
    for (std::int64_t u = 0; u < nv; ++u)
      for (const auto& a : hn.out(u))
        min_gap = std::min(min_gap, std::abs(f[u] - f[a.to]));
    if (min_gap < 1e-2) continue;
    ++checked;
    auto e = random_state(nv, rng);
    const double en = std::sqrt(norm_sq_avg(e));
    for (auto& x : e) x /= en;
    const auto lf = laplacian_apply(hn, f);
    const double expected = -2.0 * inner_avg(lf, e);
    for (double delta : {1e-3, 1e-4, 1e-5}) {
      std::vector<double> fp(f), fm(f);
      for (std::int64_t i = 0; i < nv; ++i) {
        fp[i] += delta * e[i];
        fm[i] -= delta * e[i];
      }
      const double fd =
          (directed_energy(hn, fp) - directed_energy(hn, fm)) / (2.0 * delta);
      CHECK(fd == doctest::Approx(expected).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("Lipschitz bound on the Laplacian") {
  std::mt19937_64 rng(13);
  const auto h4 = WeightedDigraph::directed_hypercube(4);
  const double dw = h4.max_weighted_degree();
  for (int t = 0; t < 100; ++t) {
    const auto f = random_state(16, rng);
    const auto g = random_state(16, rng);
    const auto lf = laplacian_apply(h4, f);
    const auto lg = laplacian_apply(h4, g);
    std::vector<double> dl(16), dfg(16);
    for (int i = 0; i < 16; ++i) {
      dl[i] = lf[i] - lg[i];
      dfg[i] = f[i] - g[i];
    }
    CHECK(std::sqrt(norm_sq_avg(dl)) <= 2.0 * dw * std::sqrt(norm_sq_avg(dfg)) + 1e-12);
  }
}

TEST_CASE("abcd sign lemma") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  auto pos = [](double x) { return x > 0 ? x : 0.0; };
  for (int t = 0; t < 1000000; ++t) {
    const double a = unif(rng), b = unif(rng), c = unif(rng), d = unif(rng);
    CHECK((pos(a - b) - pos(c - d)) * (pos(a - c) - pos(b - d)) >= 0.0);
  }
}

TEST_CASE("reverse directed Poincare") {
  const auto h1 = WeightedDigraph::directed_hypercube(1);
  const std::vector<double> f{1.0, 0.0};
  const std::vector<double> g{0.5, 0.5};
  auto rep = reverse_poincare_check(h1, f, g);
  CHECK(rep.pass);
  CHECK(rep.lhs == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(rep.rhs == doctest::Approx(0.25).epsilon(1e-15));

  const std::vector<double> bad{1.0, 0.0};
  CHECK_THROWS_AS(reverse_poincare_check(h1, f, bad), MonocubeError);

  std::mt19937_64 rng(23);
  const auto h4 = WeightedDigraph::directed_hypercube(4);
  std::vector<double> mono(16);
  for (std::size_t x = 0; x < 16; ++x) mono[x] = static_cast<double>(std::popcount(x));
  for (int t = 0; t < 100; ++t) {
    const auto f4 = random_state(16, rng);
    CHECK(reverse_poincare_check(h4, f4, mono).pass);
  }
}

TEST_CASE("dynamical gap estimate") {
  // directed 2-cycle: both estimates equal 1
  WeightedDigraph cyc(2);
  cyc.add_edge(0, 1, 1.0);
  cyc.add_edge(1, 0, 1.0);
  auto est = dynamical_gap_estimate(cyc, 64, 10, 9);
  CHECK(est.empirical_inf == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(est.lower_certificate == doctest::Approx(1.0).epsilon(1e-12));

  WeightedDigraph isolated(3);
  CHECK_THROWS_AS(dynamical_gap_estimate(isolated, 8, 2, 1), MonocubeError);

  // H_3: the descent drives the sampled infimum to the true gap 1
  const auto h3 = WeightedDigraph::directed_hypercube(3);
  auto est3 = dynamical_gap_estimate(h3, 64, 60, 123);
  CHECK(est3.empirical_inf >= 1.0 - 1e-9);
  CHECK(est3.empirical_inf <= 1.0 + 1e-6);
  CHECK(est3.lower_certificate > 0.0);
  CHECK(est3.lower_certificate <= est3.empirical_inf + 1e-9);

  const auto h6 = WeightedDigraph::directed_hypercube(6);
  auto est6 = dynamical_gap_estimate(h6, 48, 60, 5);
  CHECK(est6.empirical_inf >= 1.0 - 1e-9);
  CHECK(est6.empirical_inf <= 1.0 + 1e-6);
}
