#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "monocube/cube_set.hpp"
#include "monocube/monotone_projection.hpp"

using namespace monocube;

namespace {

// Independent oracle: exhaustive active-set enumeration.  For every subset of
// constraints treated as equalities, merge the forced-equal blocks, project
// onto block averages, keep feasible candidates, return the closest.
std::vector<double> qp_oracle(const std::vector<double>& f, const PosetEdges& p) {
  const std::size_t nv = f.size();
  const std::size_t ne = p.edges.size();
  REQUIRE(ne <= 20);
  std::vector<double> best;
  double best_dist = std::numeric_limits<double>::infinity();
  std::vector<int> parent(nv);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ne); ++mask) {
    for (std::size_t i = 0; i < nv; ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) {
        parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        x = parent[static_cast<std::size_t>(x)];
      }
      return x;
    };
    for (std::size_t e = 0; e < ne; ++e)
      if ((mask >> e) & 1) {
        const int a = find(p.edges[e].first), b = find(p.edges[e].second);
        if (a != b) parent[static_cast<std::size_t>(a)] = b;
      }
    std::vector<double> sum(nv, 0.0);
    std::vector<int> cnt(nv, 0);
    for (std::size_t i = 0; i < nv; ++i) {
      const int r = find(static_cast<int>(i));
      sum[static_cast<std::size_t>(r)] += f[i];
      cnt[static_cast<std::size_t>(r)] += 1;
    }
    std::vector<double> g(nv);
    for (std::size_t i = 0; i < nv; ++i) {
      const int r = find(static_cast<int>(i));
      g[i] = sum[static_cast<std::size_t>(r)] / cnt[static_cast<std::size_t>(r)];
    }
    bool feasible = true;
    for (const auto& [u, v] : p.edges)
      if (g[static_cast<std::size_t>(u)] > g[static_cast<std::size_t>(v)] + 1e-12) {
        feasible = false;
        break;
      }
    if (!feasible) continue;
    double d = 0.0;
    for (std::size_t i = 0; i < nv; ++i) d += (f[i] - g[i]) * (f[i] - g[i]);
    if (d < best_dist) {
      best_dist = d;
      best = g;
    }
  }
  REQUIRE(!best.empty());
  return best;
}

}  // namespace

TEST_CASE("two-point projection") {
  const auto p = PosetEdges::hypercube(1);
  auto res = project_monotone(std::vector<double>{1.0, 0.0}, p);
  CHECK(res.converged);
  CHECK(res.g[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(res.g[1] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(res.dist * res.dist == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(dist2_mono(std::vector<double>{1.0, 0.0}, p) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("already monotone functions are fixed points") {
  const auto p = PosetEdges::hypercube(3);
  std::vector<double> f(8);
  for (std::size_t x = 0; x < 8; ++x) f[x] = static_cast<double>(__builtin_popcountll(x));
  auto res = project_monotone(f, p);
  for (std::size_t i = 0; i < 8; ++i) CHECK(res.g[i] == doctest::Approx(f[i]).epsilon(1e-14));
  CHECK(res.dist == doctest::Approx(0.0));
}

TEST_CASE("n=2 fixture against the active-set oracle") {
  const auto p = PosetEdges::hypercube(2);
  // f on vertices (00, 10, 01, 11) in index order = (0, 1, 1, 0) on the
  // spec's (f00, f01, f10, f11) labels
  const std::vector<double> f{0.0, 1.0, 1.0, 0.0};
  const auto expected = qp_oracle(f, p);
  // merged violated block {01, 10, 11} averages to 2/3
  CHECK(expected[0] == doctest::Approx(0.0));
  CHECK(expected[1] == doctest::Approx(2.0 / 3));
  CHECK(expected[2] == doctest::Approx(2.0 / 3));
  CHECK(expected[3] == doctest::Approx(2.0 / 3));
  auto res = project_monotone(f, p);
  CHECK(res.converged);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(res.g[i] == doctest::Approx(expected[i]).epsilon(1e-8));
}

TEST_CASE("random instances match the oracle on the square and restricted posets") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> gauss;
  const auto cube2 = PosetEdges::hypercube(2);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> f(4);
    for (auto& x : f) x = gauss(rng);
    const auto expected = qp_oracle(f, cube2);
    const auto res = project_monotone(f, cube2);
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(res.g[i] == doctest::Approx(expected[i]).epsilon(1e-8).scale(1.0));
  }
  // restricted poset of the n=2 upper set {01, 10, 11}
  CubeSet a(2);
  a.insert(1);
  a.insert(2);
  a.insert(3);
  const auto pa = PosetEdges::restricted(a);
  CHECK(pa.vertex_count == 3);
  CHECK(pa.edges.size() == 2);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> f(3);
    for (auto& x : f) x = gauss(rng);
    const auto expected = qp_oracle(f, pa);
    const auto res = project_monotone(f, pa);
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(res.g[i] == doctest::Approx(expected[i]).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("projection properties") {
  std::mt19937_64 rng(37);
  std::normal_distribution<double> gauss;
  const auto p = PosetEdges::hypercube(3);
  for (int t = 0; t < 30; ++t) {
    std::vector<double> f(8), g(8);
    for (auto& x : f) x = gauss(rng);
    for (auto& x : g) x = gauss(rng);
    const auto pf = project_monotone(f, p);
    const auto pg = project_monotone(g, p);

    // idempotent
    const auto ppf = project_monotone(pf.g, p);
    for (std::size_t i = 0; i < 8; ++i)
      CHECK(ppf.g[i] == doctest::Approx(pf.g[i]).epsilon(1e-7).scale(1.0));

    // nonexpansive
    double dp = 0.0, df = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
      dp += (pf.g[i] - pg.g[i]) * (pf.g[i] - pg.g[i]);
      df += (f[i] - g[i]) * (f[i] - g[i]);
    }
    CHECK(dp <= df + 1e-9);

    // commutes with adding constants
    std::vector<double> fc(8);
    for (std::size_t i = 0; i < 8; ++i) fc[i] = f[i] + 2.75;
    const auto pfc = project_monotone(fc, p);
    for (std::size_t i = 0; i < 8; ++i)
      CHECK(pfc.g[i] == doctest::Approx(pf.g[i] + 2.75).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("sweep budget exhaustion is flagged") {
  const auto p = PosetEdges::hypercube(3);
  std::mt19937_64 rng(211);
  std::normal_distribution<double> gauss;
  std::vector<double> f(8);
  for (auto& x : f) x = gauss(rng);
  auto res = project_monotone(f, p, 1e-12, 2);
  CHECK(!res.converged);
  CHECK(res.sweeps == 2);
}

TEST_CASE("make_feasible repairs tiny violations exactly") {
  const auto p = PosetEdges::hypercube(2);
  std::vector<double> g{0.0, 1.0, 1.0 + 1e-11, 1.0};
  g[3] = 1.0 - 1e-11;  // violates 1->3 and 2->3
  make_feasible(g, p);
  for (const auto& [u, v] : p.edges) CHECK(g[u] <= g[v]);
}
