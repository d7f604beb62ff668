#include "monocube/monotone_projection.hpp"

#include <algorithm>
#include <cmath>

#include "monocube/errors.hpp"

namespace monocube {

PosetEdges PosetEdges::hypercube(unsigned n) {
  PosetEdges p;
  const std::int64_t total = std::int64_t{1} << n;
  p.vertex_count = total;
  p.edges.reserve(static_cast<std::size_t>(total / 2 * n));
  for (std::int64_t v = 0; v < total; ++v)
    for (unsigned i = 0; i < n; ++i)
      if (!((v >> i) & 1))
        p.edges.emplace_back(static_cast<std::int32_t>(v),
                             static_cast<std::int32_t>(v | (std::int64_t{1} << i)));
  return p;
}

PosetEdges PosetEdges::restricted(const CubeSet& a) {
  PosetEdges p;
  const auto members = a.members();
  p.vertex_count = static_cast<std::int64_t>(members.size());
  std::vector<std::int32_t> local(a.cube_size(), -1);
  for (std::size_t i = 0; i < members.size(); ++i)
    local[members[i]] = static_cast<std::int32_t>(i);
  const unsigned n = a.dim();
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Vertex v = members[i];
    for (unsigned c = 0; c < n; ++c) {
      if (vertex_bit(v, c)) continue;
      const Vertex up = v | (Vertex{1} << c);
      if (a.contains(up))
        p.edges.emplace_back(static_cast<std::int32_t>(i), local[up]);
    }
  }
  return p;
}

ProjectionResult project_monotone(std::span<const double> f, const PosetEdges& p,
                                  double tol, std::int64_t max_sweeps) {
  require(tol > 0.0, Err::ParamOutOfRange, "tolerance must be positive");
  require(static_cast<std::int64_t>(f.size()) == p.vertex_count, Err::SizeMismatch,
          "function size does not match poset");
  ProjectionResult res;
  res.g.assign(f.begin(), f.end());
  auto& x = res.g;
  std::vector<double> corr(p.edges.size(), 0.0);

  std::int64_t sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double change = 0.0;
    for (std::size_t e = 0; e < p.edges.size(); ++e) {
      const auto [u, v] = p.edges[e];
      const double yu = x[u] + corr[e];
      const double yv = x[v] - corr[e];
      if (yu > yv) {
        const double d = 0.5 * (yu - yv);
        x[u] = yu - d;
        x[v] = yv + d;
        change = std::max(change, std::abs(d - corr[e]));
        corr[e] = d;
      } else {
        x[u] = yu;
        x[v] = yv;
        change = std::max(change, std::abs(corr[e]));
        corr[e] = 0.0;
      }
    }
    double viol = 0.0;
    for (const auto& [u, v] : p.edges) viol = std::max(viol, x[u] - x[v]);
    res.max_violation = viol;
    if (change <= tol && viol <= tol) {
      res.converged = true;
      ++sweep;
      break;
    }
  }
  res.sweeps = sweep;

  double ss = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double d = f[i] - x[i];
    ss += d * d;
  }
  res.dist = std::sqrt(ss / static_cast<double>(f.size()));
  return res;
}

double dist2_mono(std::span<const double> f, const PosetEdges& p, double tol) {
  return project_monotone(f, p, tol).dist;
}

void make_feasible(std::span<double> g, const PosetEdges& p) {
  // edges are stored with ascending sources, so one pass is exact
  for (const auto& [u, v] : p.edges)
    if (g[v] < g[u]) g[v] = g[u];
}

}  // namespace monocube
