#include "monocube/directed_laplacian.hpp"

#include <cmath>

#include "monocube/errors.hpp"
#include "monocube/parallel.hpp"

namespace monocube {

namespace {
inline double pos_part(double x) { return x > 0.0 ? x : 0.0; }
}  // namespace

double inner_avg(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), Err::SizeMismatch, "inner product size mismatch");
  const std::int64_t n = static_cast<std::int64_t>(a.size());
  return par::sum_indexed(n, [&](std::int64_t i) { return a[i] * b[i]; }) / static_cast<double>(n);
}

double norm_sq_avg(std::span<const double> a) { return inner_avg(a, a); }

namespace {

inline double laplacian_at(const WeightedDigraph& g, std::span<const double> f,
                           std::int64_t z) {
  double acc = 0.0;
  for (const auto& a : g.in(z)) acc += a.w * pos_part(f[a.to] - f[z]);
  for (const auto& a : g.out(z)) acc -= a.w * pos_part(f[z] - f[a.to]);
  return 0.5 * acc;
}

inline double energy_at(const WeightedDigraph& g, std::span<const double> f, std::int64_t u) {
  double acc = 0.0;
  for (const auto& a : g.out(u)) {
    const double d = pos_part(f[u] - f[a.to]);
    acc += a.w * d * d;
  }
  return acc;
}

}  // namespace

void laplacian_apply(const WeightedDigraph& g, std::span<const double> f,
                     std::span<double> out) {
  const std::int64_t nv = g.vertex_count();
  require(static_cast<std::int64_t>(f.size()) == nv &&
              static_cast<std::int64_t>(out.size()) == nv,
          Err::SizeMismatch, "state size does not match vertex count");
  g.ensure_built();
  par::parallel_for(nv, [&](std::int64_t z) { out[z] = laplacian_at(g, f, z); });
}

std::vector<double> laplacian_apply(const WeightedDigraph& g, std::span<const double> f) {
  std::vector<double> out(f.size());
  laplacian_apply(g, f, out);
  return out;
}

double directed_energy(const WeightedDigraph& g, std::span<const double> f) {
  const std::int64_t nv = g.vertex_count();
  require(static_cast<std::int64_t>(f.size()) == nv, Err::SizeMismatch,
          "state size does not match vertex count");
  g.ensure_built();
  const double s = par::sum_indexed(nv, [&](std::int64_t u) { return energy_at(g, f, u); });
  return 0.5 * s / static_cast<double>(nv);
}

double gap_ratio(const WeightedDigraph& g, std::span<const double> f) {
  const double e = directed_energy(g, f);
  require(e > 0.0, Err::ZeroEnergy, "gap ratio undefined: f is monotone");
  std::vector<double> lf(f.size());
  laplacian_apply(g, f, lf);
  return norm_sq_avg(lf) / e;
}

std::vector<std::vector<double>> coordinate_laplacians(unsigned n, std::span<const double> f) {
  const std::size_t total = std::size_t{1} << n;
  require(f.size() == total, Err::WrongDomain, "coordinate decomposition needs the full cube");
  std::vector<std::vector<double>> parts(n, std::vector<double>(total, 0.0));
  for (unsigned i = 0; i < n; ++i) {
    auto& li = parts[i];
    const std::size_t bit = std::size_t{1} << i;
    par::parallel_for(static_cast<std::int64_t>(total), [&](std::int64_t x) {
      const std::size_t ux = static_cast<std::size_t>(x);
      const std::size_t lo = ux & ~bit, hi = ux | bit;
      if (f[lo] > f[hi]) li[ux] = 0.5 * (f[ux ^ bit] - f[ux]);
    });
  }
  return parts;
}

void frozen_laplacian_apply(const WeightedDigraph& g, std::span<const double> pattern,
                            std::span<const double> f, std::span<double> out) {
  const std::int64_t nv = g.vertex_count();
  require(static_cast<std::int64_t>(pattern.size()) == nv &&
              static_cast<std::int64_t>(f.size()) == nv &&
              static_cast<std::int64_t>(out.size()) == nv,
          Err::SizeMismatch, "state size does not match vertex count");
  g.ensure_built();
  par::parallel_for(nv, [&](std::int64_t z) {
    double acc = 0.0;
    for (const auto& a : g.in(z))
      if (pattern[a.to] > pattern[z]) acc += a.w * (f[a.to] - f[z]);
    for (const auto& a : g.out(z))
      if (pattern[z] > pattern[a.to]) acc -= a.w * (f[z] - f[a.to]);
    out[z] = 0.5 * acc;
  });
}

bool is_monotone_on(const WeightedDigraph& g, std::span<const double> f) {
  for (std::int64_t u = 0; u < g.vertex_count(); ++u)
    for (const auto& a : g.out(u))
      if (f[u] > f[a.to]) return false;
  return true;
}

namespace reference {

void laplacian_apply(const WeightedDigraph& g, std::span<const double> f,
                     std::span<double> out) {
  const std::int64_t nv = g.vertex_count();
  require(static_cast<std::int64_t>(f.size()) == nv &&
              static_cast<std::int64_t>(out.size()) == nv,
          Err::SizeMismatch, "state size does not match vertex count");
  for (std::int64_t z = 0; z < nv; ++z) out[z] = laplacian_at(g, f, z);
}

double directed_energy(const WeightedDigraph& g, std::span<const double> f) {
  const std::int64_t nv = g.vertex_count();
  require(static_cast<std::int64_t>(f.size()) == nv, Err::SizeMismatch,
          "state size does not match vertex count");
  double s = 0.0;
  for (std::int64_t u = 0; u < nv; ++u) s += energy_at(g, f, u);
  return 0.5 * s / static_cast<double>(nv);
}

}  // namespace reference

}  // namespace monocube
