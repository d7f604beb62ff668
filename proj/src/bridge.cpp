#include "monocube/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "monocube/censored_walk.hpp"
#include "monocube/directed_laplacian.hpp"
#include "monocube/errors.hpp"
#include "monocube/monotone_projection.hpp"

namespace monocube {

std::vector<double> extend_with_min(const MonotoneSet& a, std::span<const double> f) {
  require(a.size() >= 1, Err::EmptyA, "extension needs a non-empty set");
  require(f.size() == a.size(), Err::SizeMismatch, "function size mismatch");
  const double fill = *std::min_element(f.begin(), f.end());
  std::vector<double> out(a.set().cube_size(), fill);
  const auto members = a.members();
  for (std::size_t i = 0; i < members.size(); ++i) out[members[i]] = f[i];
  return out;
}

VerificationReport extension_identity_check(const MonotoneSet& a,
                                            std::span<const double> f) {
  require(a.size() >= 2, Err::TooSmall, "identity check needs |A| >= 2");
  const unsigned n = a.dim();
  const WeightedDigraph hn = WeightedDigraph::directed_hypercube(n);
  std::vector<double> neg(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) neg[i] = -f[i];
  const std::vector<double> tf = extend_with_min(a, f);
  const std::vector<double> tnf = extend_with_min(a, neg);
  VerificationReport rep;
  rep.check = "extension_energy_identity";
  rep.lhs = a.density() * dirichlet_form(a.set(), f);
  const double e1 = directed_energy(hn, tf), e2 = directed_energy(hn, tnf);
  rep.rhs = e1 + e2;
  rep.margin = std::abs(rep.lhs - rep.rhs);
  rep.pass = rep.margin <= 1e-12;
  rep.quantities = {{"mu_dirichlet", rep.lhs}, {"energy_pos", e1}, {"energy_neg", e2}};
  rep.inputs = {{"n", n}, {"A", a.size()}};
  return rep;
}

VerificationReport gap_bound_from_delta(const MonotoneSet& a, std::span<const double> f,
                                        double delta_hat) {
  require(a.size() >= 2, Err::TooSmall, "gap bound needs |A| >= 2");
  VerificationReport rep;
  rep.check = "variance_bounded_by_dirichlet";
  rep.lhs = (1.0 + delta_hat) * variance_on_A(a.set(), f);
  rep.rhs = dirichlet_form(a.set(), f);
  rep.margin = rep.rhs - rep.lhs;
  rep.pass = rep.lhs <= rep.rhs + 1e-10;
  rep.quantities = {{"delta_hat", delta_hat},
                    {"variance", variance_on_A(a.set(), f)},
                    {"dirichlet", rep.rhs}};
  rep.inputs = {{"n", a.dim()}, {"A", a.size()}};
  return rep;
}

GapWitness delta_witness_from_gap(const MonotoneSet& a, const CorrelationReport& corr) {
  require(a.size() >= 2, Err::TooSmall, "witness needs |A| >= 2");
  const CubeSet& s = a.set();
  const unsigned n = a.dim();
  GapWitness out;
  out.report.check = "dirichlet_bounded_by_variance";
  out.report.inputs = {{"n", n}, {"A", a.size()}, {"delta_hat", corr.delta_hat}};

  if (corr.delta_hat >= 0.0) {
    // any non-constant monotone function certifies the bound when delta = 0
    const auto members = s.members();
    std::vector<double> g(members.size());
    for (std::size_t i = 0; i < members.size(); ++i)
      g[i] = static_cast<double>(hamming_weight(members[i]));
    out.witness = std::move(g);
    out.report.quantities["case"] = "monotone_witness";
  } else {
    require(corr.witness_g.size() == a.size() && corr.witness_h.size() == a.size(),
            Err::SizeMismatch, "witness pair size mismatch");
    std::vector<double> diff(corr.witness_g.size());
    for (std::size_t i = 0; i < diff.size(); ++i)
      diff[i] = corr.witness_g[i] - corr.witness_h[i];
    if (variance_on_A(s, diff) <= 1e-24) {
      fail(Err::ConstantInput, "degenerate witness pair: g - h is constant");
    }
    // internal consistency: rho(g-h, g) should equal sqrt((1-delta)/2)
    const double r = rho(s, diff, corr.witness_g);
    out.report.quantities["rho_diff_g"] = r;
    out.report.quantities["rho_expected"] = std::sqrt((1.0 - corr.delta_hat) / 2.0);
    out.witness = std::move(diff);
    out.report.quantities["case"] = "difference_witness";
  }

  const double var = variance_on_A(s, out.witness);
  const double dir = dirichlet_form(s, out.witness);
  out.report.lhs = (1.0 + corr.delta_hat) * n * var;
  out.report.rhs = dir;
  out.report.margin = out.report.lhs - out.report.rhs;
  out.report.pass = out.report.lhs >= out.report.rhs - 1e-8;
  out.report.quantities["variance"] = var;
  out.report.quantities["dirichlet"] = dir;
  return out;
}

VerificationReport mono_dist_extension_checks(const MonotoneSet& a,
                                              std::span<const double> f,
                                              const CorrelationReport* witnesses) {
  require(a.size() >= 2, Err::TooSmall, "extension checks need |A| >= 2");
  const unsigned n = a.dim();
  const CubeSet& s = a.set();
  const std::vector<double> tf = extend_with_min(a, f);
  const PosetEdges cube = PosetEdges::hypercube(n);
  auto proj = project_monotone(tf, cube);
  const double dist = proj.dist;

  const auto members = s.members();
  std::vector<double> g(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) g[i] = proj.g[members[i]];
  double restr_sq = 0.0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const double d = f[i] - g[i];
    restr_sq += d * d;
  }
  restr_sq /= static_cast<double>(members.size());

  VerificationReport rep;
  rep.check = "extension_distance_transfer";
  rep.inputs = {{"n", n}, {"A", a.size()}};
  rep.lhs = std::sqrt(restr_sq);
  rep.rhs = dist / std::sqrt(a.density());
  rep.margin = rep.rhs - rep.lhs;
  bool pass = rep.lhs <= rep.rhs + 1e-8;
  rep.quantities = {{"dist_mono_extension", dist}, {"restriction_error", rep.lhs}};

  if (witnesses && !witnesses->witness_g.empty()) {
    // tau(f, g) dominates the scaled extension distance for monotone g
    double worst = std::numeric_limits<double>::infinity();
    for (const auto* w : {&witnesses->witness_g, &witnesses->witness_h}) {
      const double t = tau(s, f, *w);
      worst = std::min(worst, t - rep.rhs);
      pass = pass && (rep.rhs <= t + 1e-8);
    }
    rep.quantities["tau_margin"] = worst;
  }
  rep.pass = pass;
  return rep;
}

}  // namespace monocube
