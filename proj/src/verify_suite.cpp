#include "monocube/verify_suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>

#include "monocube/bridge.hpp"
#include "monocube/censored_walk.hpp"
#include "monocube/cube_set.hpp"
#include "monocube/directed_laplacian.hpp"
#include "monocube/errors.hpp"
#include "monocube/fkg.hpp"
#include "monocube/heat_flow.hpp"
#include "monocube/monotone_projection.hpp"
#include "monocube/parallel.hpp"

namespace monocube {

namespace {

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

int scaled(const SuiteOptions& opt, int def) {
  if (opt.random_trials > 0)
    return std::max(1, static_cast<int>(static_cast<long long>(def) * opt.random_trials / 10000));
  if (opt.quick) return std::max(1, def / 20);
  return def;
}

std::vector<double> gaussian_state(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<double> f(n);
  for (auto& x : f) x = gauss(rng);
  return f;
}

CubeSet fixture_upper_n2() {
  CubeSet a(2);
  a.insert(1);
  a.insert(2);
  a.insert(3);
  return a;
}

// ---- shared exhaustive data (criteria 2, 9, 11) ----

struct ExhaustiveEntry {
  CubeSet set{1};
  SpectralReport gamma;
  CorrelationReport corr;
};

const std::vector<ExhaustiveEntry>& exhaustive_data(unsigned n_max) {
  static std::map<unsigned, std::vector<ExhaustiveEntry>> cache;
  auto it = cache.find(n_max);
  if (it != cache.end()) return it->second;

  std::vector<CubeSet> sets;
  for (unsigned n = 1; n <= n_max; ++n)
    for (auto& s : enumerate_all_monotone(n))
      if (s.size() >= 2) sets.push_back(std::move(s));

  std::vector<ExhaustiveEntry> entries(sets.size());
  par::parallel_for_dynamic(static_cast<std::int64_t>(sets.size()), [&](std::int64_t i) {
    auto& e = entries[static_cast<std::size_t>(i)];
    e.set = sets[static_cast<std::size_t>(i)];
    e.gamma = spectral_gap_gamma(e.set);
    e.corr = delta_search(MonotoneSet::validate(e.set), 32, 50,
                          0xabcd + static_cast<std::uint64_t>(i));
  });
  return cache.emplace(n_max, std::move(entries)).first->second;
}

// ---- shared flow traces (criteria 5 and 12) ----

struct TraceBundle {
  unsigned n = 0;
  double h = 0.0;
  double f0_scale = 0.0;
  FlowResult flow;
  std::vector<std::vector<double>> states;
};

const std::vector<TraceBundle>& shared_traces(const SuiteOptions& opt) {
  static std::map<bool, std::vector<TraceBundle>> cache;
  const bool quick = opt.quick;
  auto it = cache.find(quick);
  if (it != cache.end()) return it->second;

  std::vector<std::pair<unsigned, std::uint64_t>> jobs;
  for (unsigned n = 1; n <= 6; ++n) {
    const int per = quick ? 3 : (n <= 4 ? 25 : 10);
    for (int t = 0; t < per; ++t)
      jobs.emplace_back(n, 0x51ull * n + static_cast<std::uint64_t>(t));
  }
  for (unsigned n = 7; n <= 8; ++n)
    for (int t = 0; t < (quick ? 1 : 4); ++t)
      jobs.emplace_back(n, 0x51ull * n + static_cast<std::uint64_t>(t));

  std::vector<TraceBundle> bundles(jobs.size());
  par::parallel_for_dynamic(static_cast<std::int64_t>(jobs.size()), [&](std::int64_t i) {
    const auto [n, seed] = jobs[static_cast<std::size_t>(i)];
    std::mt19937_64 rng(seed);
    const auto hn = WeightedDigraph::directed_hypercube(n);
    auto f0 = gaussian_state(static_cast<std::size_t>(hn.vertex_count()), rng);
    TraceBundle& b = bundles[static_cast<std::size_t>(i)];
    b.n = n;
    for (double x : f0) b.f0_scale = std::max(b.f0_scale, std::abs(x));
    FlowOptions fopt;
    fopt.observer = [&](double, std::span<const double> f) {
      b.states.emplace_back(f.begin(), f.end());
    };
    b.flow = heat_flow_solve(hn, std::move(f0), fopt);
    const auto& ts = b.flow.trace.t;
    b.h = ts.size() >= 2 ? ts[1] - ts[0] : 0.0;
  });
  return cache.emplace(quick, std::move(bundles)).first->second;
}

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---- criteria ----

CriterionResult criterion_1(const SuiteOptions&) {
  CriterionResult res{1, "full-cube spectral gap is exactly 1/n", true, "", {}};
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (unsigned n = 1; n <= 10; ++n) {
    const auto rep = spectral_gap_gamma(full_cube(n).set());
    const double dev = std::abs(rep.gamma - 1.0 / n);
    worst = std::max(worst, dev);
    res.pass = res.pass && dev <= 1e-9;
  }
  const double secs = elapsed(t0);
  res.pass = res.pass && secs < 30.0;
  res.detail = fmt("n=1..10, max |gamma - 1/n| = %.2e, %.1f s", worst, secs);
  return res;
}

CriterionResult criterion_2(const SuiteOptions& opt) {
  CriterionResult res{2, "gap bound over all monotone sets at small n", true, "", {}};
  const auto t0 = Clock::now();
  // enumeration counts (empty set included)
  static const std::uint64_t dedekind[6] = {0, 3, 6, 20, 168, 7581};
  std::string counts;
  for (unsigned n = 1; n <= 5; ++n) {
    const auto all = enumerate_all_monotone(n);
    res.pass = res.pass && all.size() == dedekind[n];
    counts += fmt("%zu%s", all.size(), n < 5 ? "/" : "");
  }
  // exhaustive bound check
  double worst_margin = 1e9;
  for (const auto& e : exhaustive_data(std::min(opt.n_max, 4u))) {
    worst_margin = std::min(worst_margin, e.gamma.margin);
    res.pass = res.pass && e.gamma.margin >= -1e-12;
  }
  // equality fixture at n=2
  const auto fix = spectral_gap_gamma(fixture_upper_n2());
  res.pass = res.pass && std::abs(fix.gamma - 0.25) <= 1e-12 &&
             std::abs(fix.margin) <= 1e-12;
  // n=5 spot sample
  {
    const auto all = enumerate_all_monotone(5);
    std::mt19937_64 rng(0x5e5e);
    const int samples = scaled(opt, 500);
    for (int t = 0; t < samples; ++t) {
      const auto& s = all[rng() % all.size()];
      if (s.size() < 2) continue;
      const auto rep = spectral_gap_gamma(s);
      res.pass = res.pass && rep.margin >= -1e-12;
      worst_margin = std::min(worst_margin, rep.margin);
    }
  }
  const double secs = elapsed(t0);
  res.pass = res.pass && secs < 300.0;
  res.detail = fmt("counts %s, worst margin %.2e, fixture gamma %.12f, %.1f s",
                   counts.c_str(), worst_margin, fix.gamma, secs);
  return res;
}

CriterionResult criterion_3(const SuiteOptions& opt) {
  CriterionResult res{3, "dynamical gap of the directed hypercube is 1", true, "", {}};
  const auto t0 = Clock::now();
  double global_min = 1e9, anti_worst = 0.0;
  for (unsigned n = 1; n <= 8; ++n) {
    const auto hn = WeightedDigraph::directed_hypercube(n);
    const int trials = scaled(opt, 10000);
    std::vector<double> mins(static_cast<std::size_t>(par::thread_count()), 1e9);
    std::vector<char> ok(static_cast<std::size_t>(trials), 1);
    std::vector<double> ratios(static_cast<std::size_t>(trials), 1e9);
    par::parallel_for_dynamic(trials, [&](std::int64_t t) {
      std::mt19937_64 rng(0x300 + 1000003ull * n + static_cast<std::uint64_t>(t));
      auto f = gaussian_state(static_cast<std::size_t>(hn.vertex_count()), rng);
      if (directed_energy(hn, f) <= 0.0) return;
      ratios[static_cast<std::size_t>(t)] = gap_ratio(hn, f);
      ok[static_cast<std::size_t>(t)] = ratios[static_cast<std::size_t>(t)] >= 1.0 - 1e-9;
    });
    for (int t = 0; t < trials; ++t) {
      res.pass = res.pass && ok[static_cast<std::size_t>(t)];
      global_min = std::min(global_min, ratios[static_cast<std::size_t>(t)]);
    }
    // anti-dictator achieves the infimum exactly
    std::vector<double> anti(static_cast<std::size_t>(hn.vertex_count()));
    for (std::size_t x = 0; x < anti.size(); ++x) anti[x] = -static_cast<double>(x & 1u);
    const double r = gap_ratio(hn, anti);
    anti_worst = std::max(anti_worst, std::abs(r - 1.0));
    res.pass = res.pass && std::abs(r - 1.0) <= 1e-12;
  }
  const double secs = elapsed(t0);
  res.pass = res.pass && secs < 120.0;
  res.detail = fmt("min ratio %.12f, anti-dictator |ratio-1| <= %.1e, %.1f s",
                   global_min, anti_worst, secs);
  return res;
}

CriterionResult criterion_4(const SuiteOptions& opt) {
  CriterionResult res{4, "directed Poincare sandwich", true, "", {}};
  const auto t0 = Clock::now();
  const double tol = 1e-8;
  double worst_low = 1e9, worst_mid = 1e9, worst_up = 1e9;
  for (unsigned n = 1; n <= 8; ++n) {
    const auto hn = WeightedDigraph::directed_hypercube(n);
    const auto edges = PosetEdges::hypercube(n);
    const int trials = scaled(opt, 1000);
    std::vector<std::array<double, 3>> margins(static_cast<std::size_t>(trials),
                                               {1e9, 1e9, 1e9});
    par::parallel_for_dynamic(trials, [&](std::int64_t t) {
      std::mt19937_64 rng(0x400 + 1000003ull * n + static_cast<std::uint64_t>(t));
      auto f = gaussian_state(static_cast<std::size_t>(hn.vertex_count()), rng);
      const double energy = directed_energy(hn, f);
      FlowOptions fopt;
      fopt.record_stride = std::numeric_limits<std::int64_t>::max() / 2;
      auto flow = heat_flow_solve(hn, f, fopt);
      std::vector<double> diff(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) diff[i] = f[i] - flow.equilibrium[i];
      const double flow_dist_sq = norm_sq_avg(diff);
      const double d = dist2_mono(f, edges);
      auto& m = margins[static_cast<std::size_t>(t)];
      m[0] = d * d - energy / n;        // >= -tol
      m[1] = flow_dist_sq - d * d;      // >= -tol
      m[2] = energy - flow_dist_sq;     // >= -tol
    });
    for (const auto& m : margins) {
      worst_low = std::min(worst_low, m[0]);
      worst_mid = std::min(worst_mid, m[1]);
      worst_up = std::min(worst_up, m[2]);
      res.pass = res.pass && m[0] >= -tol && m[1] >= -tol && m[2] >= -tol;
    }
  }
  res.detail = fmt("worst margins: lower %.2e, middle %.2e, upper %.2e, %.1f s",
                   worst_low, worst_mid, worst_up, elapsed(t0));
  return res;
}

CriterionResult criterion_5(const SuiteOptions& opt) {
  CriterionResult res{5, "heat-flow dynamics", true, "", {}};
  const auto t0 = Clock::now();
  const auto& traces = shared_traces(opt);
  std::int64_t derivative_points = 0;
  double worst_rel = 0.0, worst_envelope = -1e9;
  for (const auto& b : traces) {
    const auto& tr = b.flow.trace;
    const double e0 = tr.energy.front();
    const double floor = std::pow(1e-11 * std::max(1.0, b.f0_scale), 2);
    res.pass = res.pass && b.flow.converged;
    res.pass = res.pass &&
               directed_energy(WeightedDigraph::directed_hypercube(b.n), b.flow.equilibrium) <=
                   1e-16;
    for (std::size_t k = 1; k < tr.t.size(); ++k) {
      res.pass = res.pass && tr.energy[k] <= tr.energy[k - 1] + 1e-12 * (e0 + 1.0);
      const double env = e0 * std::exp(-2.0 * tr.t[k]) * (1.0 + 1e-6) + floor;
      worst_envelope = std::max(worst_envelope, (tr.energy[k] - env) / (e0 + 1e-300));
      res.pass = res.pass && tr.energy[k] <= env;
    }
    // derivative identity at kink-free interior stencil points
    const auto hn = WeightedDigraph::directed_hypercube(b.n);
    for (std::size_t k = 2; k + 2 < tr.t.size(); ++k) {
      if (tr.energy[k] < std::max(1e-10 * e0, 1e-18)) break;
      const auto& fk = b.states[k];
      std::vector<double> lf(fk.size());
      laplacian_apply(hn, fk, lf);
      double linf = 0.0;
      for (double v : lf) linf = std::max(linf, std::abs(v));
      const double kink_margin = 16.0 * b.h * linf + 1e-300;
      bool generic = true;
      for (std::int64_t u = 0; u < hn.vertex_count() && generic; ++u)
        for (const auto& a : hn.out(u))
          if (std::abs(fk[static_cast<std::size_t>(u)] - fk[static_cast<std::size_t>(a.to)]) <=
              kink_margin) {
            generic = false;
            break;
          }
      if (!generic) continue;
      const double d1 = (tr.energy[k - 2] - 8.0 * tr.energy[k - 1] +
                         8.0 * tr.energy[k + 1] - tr.energy[k + 2]) /
                        (12.0 * b.h);
      const double expected = -2.0 * tr.lap_norm_sq[k];
      const double rel = std::abs(d1 - expected) /
                         std::max(std::abs(expected), 1e-14 * (e0 + 1.0));
      worst_rel = std::max(worst_rel, rel);
      res.pass = res.pass && rel <= 1e-6;
      ++derivative_points;
    }
  }
  res.pass = res.pass && derivative_points >= 100;
  res.detail = fmt("%zu traces, %lld derivative points (worst rel %.2e), "
                   "envelope slack %.2e, %.1f s",
                   traces.size(), static_cast<long long>(derivative_points), worst_rel,
                   worst_envelope, elapsed(t0));
  return res;
}

CriterionResult criterion_6(const SuiteOptions& opt) {
  CriterionResult res{6, "extension energy identity", true, "", {}};
  const auto t0 = Clock::now();
  // hand-verified fixture: 1/4 = 1/8 + 1/8
  {
    auto a = MonotoneSet::validate(fixture_upper_n2());
    const std::vector<double> f{-1.0, 1.0, 0.0};
    auto rep = extension_identity_check(a, f);
    res.pass = rep.pass && std::abs(rep.lhs - 0.25) <= 1e-15 &&
               std::abs(rep.quantities["energy_pos"].get<double>() - 0.125) <= 1e-15 &&
               std::abs(rep.quantities["energy_neg"].get<double>() - 0.125) <= 1e-15;
  }
  const int trials = scaled(opt, 10000);
  std::vector<double> margins(static_cast<std::size_t>(trials), 0.0);
  par::parallel_for_dynamic(trials, [&](std::int64_t t) {
    std::mt19937_64 rng(0x600 + static_cast<std::uint64_t>(t));
    const unsigned n = 2 + static_cast<unsigned>(rng() % 7);
    const double p = 0.05 + 0.9 * static_cast<double>(rng() % 1000) / 1000.0;
    auto a = random_monotone(n, p, rng());
    if (a.size() < 2) return;
    auto f = gaussian_state(static_cast<std::size_t>(a.size()), rng);
    margins[static_cast<std::size_t>(t)] = extension_identity_check(a, f).margin;
  });
  double worst = 0.0;
  for (double m : margins) worst = std::max(worst, m);
  res.pass = res.pass && worst <= 1e-12;
  res.detail = fmt("fixture exact, %d random (A,f), worst |lhs-rhs| = %.2e, %.1f s",
                   trials, worst, elapsed(t0));
  return res;
}

CriterionResult criterion_7(const SuiteOptions&) {
  CriterionResult res{7, "worked joint example reproduction", true, "", {}};
  const auto j = FiniteJoint::builtin_example();
  const double c = best_c(j);
  const auto chk = fkg_theorem_check(j);
  res.pass = std::abs(c - 45.0 / 49) <= 1e-15 &&
             std::abs(j.covariance() + 8.0 / 45) <= 1e-12 &&
             std::abs(j.marginal_x().variance() - 28.0 / 45) <= 1e-12 &&
             std::abs(j.marginal_y().variance() - 28.0 / 45) <= 1e-12 &&
             std::abs(chk.cov - chk.bound) <= 1e-12 && chk.pass;
  res.detail = fmt("best_c - 45/49 = %.1e, cov %.12f, equality gap %.1e", c - 45.0 / 49,
                   chk.cov, std::abs(chk.cov - chk.bound));
  return res;
}

CriterionResult criterion_8(const SuiteOptions& opt) {
  CriterionResult res{8, "K-calculus identities", true, "", {}};
  const auto t0 = Clock::now();
  std::mt19937_64 rng(0x800);
  auto random_distribution = [&](std::mt19937_64& r) {
    std::uniform_int_distribution<int> ksup(1, 6);
    std::uniform_real_distribution<double> val(-3.0, 3.0);
    std::uniform_real_distribution<double> mass(0.05, 1.0);
    const int k = ksup(r);
    std::vector<std::pair<double, double>> atoms;
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
      atoms.emplace_back(val(r), mass(r));
      total += atoms.back().second;
    }
    for (auto& [v, p] : atoms) p /= total;
    return FiniteDistribution::of(std::move(atoms));
  };
  // variance identity
  double worst_var = 0.0;
  const int trials = scaled(opt, 10000);
  for (int t = 0; t < trials; ++t) {
    const auto d = random_distribution(rng);
    const auto a = pushforward(d);
    const double dev = std::abs(k_operator(a, a.reversed(), 0.0) - d.variance());
    worst_var = std::max(worst_var, dev);
  }
  res.pass = res.pass && worst_var <= 1e-10;
  // Cauchy-Schwarz for K
  double worst_cs = -1e9;
  for (int t = 0; t < trials; ++t) {
    const auto a = pushforward(random_distribution(rng));
    const auto b = pushforward(random_distribution(rng));
    const double kaa = k_operator(a, a.reversed(), 0.0);
    const double kbb = k_operator(b, b.reversed(), 0.0);
    for (double c : {0.0, 0.25, 0.5, 0.9}) {
      const double kab = k_operator(a, b, c);
      worst_cs = std::max(worst_cs, kab * kab - kaa * kbb);
      res.pass = res.pass && kab * kab <= kaa * kbb + 1e-10;
    }
  }
  // covariance chain on random joints
  auto random_joint = [&](std::mt19937_64& r) {
    std::uniform_int_distribution<int> kdist(2, 5);
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    const int kx = kdist(r), ky = kdist(r);
    std::vector<double> xs(static_cast<std::size_t>(kx)), ys(static_cast<std::size_t>(ky));
    for (auto& v : xs) v = val(r);
    for (auto& v : ys) v = val(r);
    std::vector<std::array<double, 3>> sup;
    double total = 0.0;
    for (int i = 0; i < kx; ++i)
      for (int l = 0; l < ky; ++l) {
        const double p = std::uniform_real_distribution<double>(0.0, 1.0)(r);
        sup.push_back({xs[static_cast<std::size_t>(i)], ys[static_cast<std::size_t>(l)], p});
        total += p;
      }
    for (auto& s : sup) s[2] /= total;
    return FiniteJoint(std::move(sup));
  };
  double worst_chain = 1e9;
  for (int t = 0; t < trials; ++t) {
    const auto j = random_joint(rng);
    if (j.marginal_x().variance() <= 1e-12 || j.marginal_y().variance() <= 1e-12) continue;
    const double c_eff = std::min(best_c(j), 1.0 - 1e-9);
    const auto alpha = pushforward(j.marginal_x());
    const auto beta = pushforward(j.marginal_y());
    const double rhs = -std::sqrt(1.0 - c_eff) * k_operator(alpha, beta, c_eff);
    worst_chain = std::min(worst_chain, j.covariance() - rhs);
    res.pass = res.pass && j.covariance() >= rhs - 1e-10;
  }
  res.detail = fmt("var dev %.1e, CS slack %.1e, chain margin %.1e, %.1f s", worst_var,
                   worst_cs, worst_chain, elapsed(t0));
  return res;
}

CriterionResult criterion_9(const SuiteOptions& opt) {
  CriterionResult res{9, "approximate FKG ratio pipeline", true, "", {}};
  const auto t0 = Clock::now();
  // full cube: delta_hat = 0
  for (unsigned n : {3u, 4u}) {
    const auto rep = delta_search(full_cube(n), 32, 50, 0x900 + n);
    res.pass = res.pass && std::abs(rep.delta_hat) <= 1e-8;
  }
  // fixture: equality with the bound at -1/2
  const auto fix =
      delta_search(MonotoneSet::validate(fixture_upper_n2()), 32, 60, 0x901);
  res.pass = res.pass && std::abs(fix.delta_hat + 0.5) <= 1e-6;
  // exhaustive bound check
  double worst = 1e9;
  for (const auto& e : exhaustive_data(std::min(opt.n_max, 4u))) {
    worst = std::min(worst, e.corr.margin);
    res.pass = res.pass && e.corr.delta_hat >= e.corr.bound - 1e-8;
  }
  // strongly anti-correlated family
  const auto ts = delta_search(two_subcubes(8, 4), 32, 60, 0x902);
  res.pass = res.pass && ts.delta_hat <= -0.9;
  res.detail = fmt("fixture %.8f, worst margin vs -sqrt(1-mu) %.2e, "
                   "two_subcubes(8,4) %.6f, %.1f s",
                   fix.delta_hat, worst, ts.delta_hat, elapsed(t0));
  return res;
}

CriterionResult criterion_10(const SuiteOptions& opt) {
  CriterionResult res{10, "mixing-time bound and bridge trend", true, "", {}};
  const auto t0 = Clock::now();
  std::vector<CubeSet> sets;
  {
    std::mt19937_64 rng(0xa00);
    const int want = scaled(opt, 200);
    while (static_cast<int>(sets.size()) < want) {
      const unsigned n = 1 + static_cast<unsigned>(rng() % 8);
      const double p = 0.02 + 0.9 * static_cast<double>(rng() % 1000) / 1000.0;
      auto a = random_monotone(n, p, rng());
      if (a.size() >= 2) sets.push_back(a.set());
    }
    for (unsigned n = 1; n <= 8; ++n) sets.push_back(full_cube(n).set());
    for (unsigned n = 4; n <= 8; ++n)
      for (unsigned m = (n + 3) / 4; 2 * m <= n; ++m) sets.push_back(two_subcubes(n, m).set());
    for (unsigned n = 1; n <= 8; ++n)
      for (unsigned k = 1; k < n; ++k) {
        auto wt = weight_threshold(n, k);
        if (wt.size() >= 2) sets.push_back(wt.set());
      }
    for (unsigned n = 2; n <= 8; ++n)
      for (int t = 0; t < 3; ++t) {
        std::vector<double> coef(n);
        for (auto& c : coef) c = static_cast<double>(rng() % 8);
        double total = 0.0;
        for (double c : coef) total += c;
        auto hs = halfspace(n, coef, total * (0.2 + 0.2 * t));
        if (hs.size() >= 2) sets.push_back(hs.set());
      }
  }
  std::vector<std::array<double, 2>> outcome(sets.size(), {0.0, 0.0});
  par::parallel_for_dynamic(static_cast<std::int64_t>(sets.size()), [&](std::int64_t i) {
    const auto mix = mixing_time_tv(sets[static_cast<std::size_t>(i)]);
    outcome[static_cast<std::size_t>(i)] = {static_cast<double>(mix.t_mix),
                                            mix.exact && mix.pass ? 1.0 : 0.0};
  });
  double worst_ratio = 0.0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    res.pass = res.pass && outcome[i][1] > 0.5;
    const double bound =
        2.0 * sets[i].dim() / sets[i].density() *
        std::log(4.0 * static_cast<double>(sets[i].size()));
    worst_ratio = std::max(worst_ratio, outcome[i][0] / bound);
  }
  // bridge family: the stated trend is a >= 2x gamma decrease per dimension
  // step; the measured factors oscillate with the parity of the removed
  // middle layer, so the literal check is reported as-is
  std::string trend = "bridge gamma step factors:";
  double prev = 0.0;
  bool trend_ok = true;
  for (unsigned n = 4; n <= 8; ++n) {
    const auto rep = spectral_gap_gamma(middle_slice_bridge(n));
    if (n > 4) {
      trend += fmt(" %.3f", prev / rep.gamma);
      trend_ok = trend_ok && rep.gamma <= prev / 2.0;
    }
    prev = rep.gamma;
  }
  res.pass = res.pass && trend_ok;
  res.detail = fmt("%zu sets, worst t_mix/bound = %.3f; %s (>=2 each: %s), %.1f s",
                   sets.size(), worst_ratio, trend.c_str(), trend_ok ? "yes" : "no",
                   elapsed(t0));
  return res;
}

CriterionResult criterion_11(const SuiteOptions& opt) {
  CriterionResult res{11, "spectral gap vs FKG ratio sandwich", true, "", {}};
  const auto t0 = Clock::now();
  double worst_lower = 1e9, worst_upper = 1e9;
  for (const auto& e : exhaustive_data(std::min(opt.n_max, 4u))) {
    const double n = e.set.dim();
    const double lower_slack =
        e.gamma.gamma * (1.0 + 1e-8) - (1.0 + e.corr.delta_hat) / n;
    const double upper_slack = (1.0 + e.corr.delta_hat) + 1e-8 - e.gamma.gamma;
    worst_lower = std::min(worst_lower, lower_slack);
    worst_upper = std::min(worst_upper, upper_slack);
    res.pass = res.pass && lower_slack >= -1e-12 && upper_slack >= 0.0;
  }
  res.detail = fmt("%zu sets, worst slacks: lower %.2e, upper %.2e, %.1f s",
                   exhaustive_data(std::min(opt.n_max, 4u)).size(), worst_lower,
                   worst_upper, elapsed(t0));
  return res;
}

CriterionResult criterion_12(const SuiteOptions& opt) {
  CriterionResult res{12, "appendix property suites", true, "", {}};
  const auto t0 = Clock::now();
  // four-point sign identity
  std::mt19937_64 rng(0xc00);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  auto pos = [](double x) { return x > 0 ? x : 0.0; };
  std::int64_t violations = 0;
  const int quadruples = scaled(opt, 1000000);
  for (int t = 0; t < quadruples; ++t) {
    const double a = unif(rng), b = unif(rng), c = unif(rng), d = unif(rng);
    if ((pos(a - b) - pos(c - d)) * (pos(a - c) - pos(b - d)) < 0.0) ++violations;
  }
  res.pass = violations == 0;
  // decay-integral bound along every shared trace (K = 2 lambda⁻ = 2)
  double worst_slack = 1e9;
  const auto& traces = shared_traces(opt);
  for (const auto& b : traces) {
    const auto& tr = b.flow.trace;
    double integral = 0.0;
    for (std::size_t k = 0; k + 1 < tr.t.size(); ++k) {
      const double dt = tr.t[k + 1] - tr.t[k];
      const double drop = std::max(0.0, tr.energy[k] - tr.energy[k + 1]);
      if (dt > 0.0) integral += std::sqrt(drop / dt) * dt;
    }
    const double e0 = tr.energy.front();
    const double bound = std::sqrt(2.0 * e0) + 1e-3 * std::sqrt(e0) + 1e-12;
    worst_slack = std::min(worst_slack, bound - integral);
    res.pass = res.pass && integral <= bound;
  }
  res.detail = fmt("%d quadruples, %lld violations; decay-integral slack %.2e, %.1f s",
                   quadruples, static_cast<long long>(violations), worst_slack,
                   elapsed(t0));
  return res;
}

}  // namespace

CriterionResult run_criterion(int id, const SuiteOptions& opt) {
  switch (id) {
    case 1: return criterion_1(opt);
    case 2: return criterion_2(opt);
    case 3: return criterion_3(opt);
    case 4: return criterion_4(opt);
    case 5: return criterion_5(opt);
    case 6: return criterion_6(opt);
    case 7: return criterion_7(opt);
    case 8: return criterion_8(opt);
    case 9: return criterion_9(opt);
    case 10: return criterion_10(opt);
    case 11: return criterion_11(opt);
    case 12: return criterion_12(opt);
    default: fail(Err::ParamOutOfRange, "criterion id out of range");
  }
}

std::vector<CriterionResult> run_all_criteria(const SuiteOptions& opt) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 12; ++id) out.push_back(run_criterion(id, opt));
  return out;
}

}  // namespace monocube
