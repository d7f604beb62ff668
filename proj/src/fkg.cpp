#include "monocube/fkg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "monocube/censored_walk.hpp"
#include "monocube/errors.hpp"
#include "monocube/monotone_projection.hpp"
#include "monocube/parallel.hpp"

namespace monocube {

DiscreteMeasure DiscreteMeasure::of(std::vector<std::pair<double, double>> atoms) {
  DiscreteMeasure m;
  for (auto& [x, w] : atoms) {
    require(x >= 0.0 && x <= 1.0 && std::isfinite(w) && w >= 0.0, Err::ParamOutOfRange,
            "measure atom out of range");
    if (x == 0.0 || x == 1.0 || w == 0.0) continue;
    m.atoms.emplace_back(x, w);
  }
  return m;
}

DiscreteMeasure DiscreteMeasure::reversed() const {
  DiscreteMeasure m;
  m.atoms.reserve(atoms.size());
  for (const auto& [x, w] : atoms) m.atoms.emplace_back(1.0 - x, w);
  return m;
}

double DiscreteMeasure::total_mass() const {
  double s = 0.0;
  for (const auto& [x, w] : atoms) s += w;
  return s;
}

FiniteDistribution FiniteDistribution::of(std::vector<std::pair<double, double>> atoms) {
  std::map<double, double> merged;
  for (const auto& [v, p] : atoms) {
    require(std::isfinite(v) && std::isfinite(p) && p >= 0.0, Err::ParamOutOfRange,
            "bad distribution atom");
    if (p > 0.0) merged[v] += p;
  }
  require(!merged.empty(), Err::EmptySupport, "distribution has empty support");
  FiniteDistribution d;
  d.atoms.assign(merged.begin(), merged.end());
  return d;
}

double FiniteDistribution::mean() const {
  double s = 0.0;
  for (const auto& [v, p] : atoms) s += v * p;
  return s;
}

double FiniteDistribution::variance() const {
  const double m = mean();
  double s = 0.0;
  for (const auto& [v, p] : atoms) s += (v - m) * (v - m) * p;
  return s;
}

FiniteJoint::FiniteJoint(std::vector<std::array<double, 3>> support) {
  std::map<std::pair<double, double>, double> merged;
  double total = 0.0;
  for (const auto& [x, y, p] : support) {
    require(std::isfinite(x) && std::isfinite(y) && std::isfinite(p) && p >= 0.0,
            Err::InvalidJoint, "bad joint atom");
    if (p > 0.0) merged[{x, y}] += p;
    total += p;
  }
  require(std::abs(total - 1.0) <= 1e-14, Err::InvalidJoint,
          "joint probabilities must sum to 1");
  require(!merged.empty(), Err::InvalidJoint, "joint has empty support");
  std::vector<std::pair<double, double>> mx, my;
  for (const auto& [xy, p] : merged) {
    support_.push_back({xy.first, xy.second, p});
    mx.emplace_back(xy.first, p);
    my.emplace_back(xy.second, p);
  }
  mx_ = FiniteDistribution::of(std::move(mx));
  my_ = FiniteDistribution::of(std::move(my));
}

double FiniteJoint::covariance() const {
  const double ex = mx_.mean(), ey = my_.mean();
  double s = 0.0;
  for (const auto& [x, y, p] : support_) s += (x - ex) * (y - ey) * p;
  return s;
}

double FiniteJoint::tail(double a, double b) const {
  double s = 0.0;
  for (const auto& [x, y, p] : support_)
    if (x >= a && y >= b) s += p;
  return s;
}

FiniteJoint FiniteJoint::builtin_example() {
  return FiniteJoint({{3, 3, 1.0 / 5}, {3, 2, 1.0 / 5}, {2, 3, 1.0 / 5},
                      {0, 3, 1.0 / 15}, {3, 0, 1.0 / 15}, {2, 2, 4.0 / 15}});
}

DiscreteMeasure pushforward(const FiniteDistribution& x) {
  require(!x.atoms.empty(), Err::EmptySupport, "push-forward of empty support");
  const std::size_t k = x.atoms.size();
  std::vector<double> survival(k);  // P[X >= v_i]
  double tail = 0.0;
  for (std::size_t i = k; i-- > 0;) {
    tail += x.atoms[i].second;
    survival[i] = tail;
  }
  std::vector<std::pair<double, double>> atoms;
  for (std::size_t i = 1; i < k; ++i)
    atoms.emplace_back(survival[i], x.atoms[i].first - x.atoms[i - 1].first);
  return DiscreteMeasure::of(std::move(atoms));
}

double k_operator(const DiscreteMeasure& lambda, const DiscreteMeasure& nu, double c) {
  require(c >= 0.0 && c < 1.0, Err::BadC, "K_c needs c in [0,1)");
  const double root = std::sqrt(1.0 - c);
  double s = 0.0;
  for (const auto& [x, wx] : lambda.atoms)
    for (const auto& [y, wy] : nu.atoms)
      s += wx * wy * std::min(root * x * y, (1.0 - x) * (1.0 - y) / root);
  return s;
}

double best_c(const FiniteJoint& j) {
  const auto& xs = j.marginal_x().atoms;
  const auto& ys = j.marginal_y().atoms;
  const std::size_t kx = xs.size(), ky = ys.size();
  // joint tail grid by suffix sums over the support grid
  std::vector<double> grid(kx * ky, 0.0);
  auto x_index = [&](double v) {
    return static_cast<std::size_t>(
        std::lower_bound(xs.begin(), xs.end(), std::make_pair(v, -1.0)) - xs.begin());
  };
  auto y_index = [&](double v) {
    return static_cast<std::size_t>(
        std::lower_bound(ys.begin(), ys.end(), std::make_pair(v, -1.0)) - ys.begin());
  };
  for (const auto& [x, y, p] : j.support()) grid[x_index(x) * ky + y_index(y)] += p;
  for (std::size_t i = kx; i-- > 0;)
    for (std::size_t l = ky; l-- > 0;) {
      double s = grid[i * ky + l];
      if (i + 1 < kx) s += grid[(i + 1) * ky + l];
      if (l + 1 < ky) s += grid[i * ky + l + 1];
      if (i + 1 < kx && l + 1 < ky) s -= grid[(i + 1) * ky + l + 1];
      grid[i * ky + l] = s;
    }
  std::vector<double> sx(kx), sy(ky);
  for (std::size_t i = kx; i-- > 0;) sx[i] = xs[i].second + (i + 1 < kx ? sx[i + 1] : 0.0);
  for (std::size_t l = ky; l-- > 0;) sy[l] = ys[l].second + (l + 1 < ky ? sy[l + 1] : 0.0);

  double c = 1.0;
  for (std::size_t i = 0; i < kx; ++i)
    for (std::size_t l = 0; l < ky; ++l) {
      const double denom = sx[i] * sy[l];
      if (denom <= 0.0) continue;  // vacuous thresholds
      c = std::min(c, grid[i * ky + l] / denom);
    }
  return std::min(c, 1.0);
}

VerificationReport FkgCheckResult::report() const {
  VerificationReport rep;
  rep.check = "approximate_fkg_joint";
  rep.quantities = {{"c", c},         {"cov", cov},   {"var_x", var_x},
                    {"var_y", var_y}, {"kc_ab", kc_ab}, {"k_aa", k_aa},
                    {"k_bb", k_bb}};
  rep.lhs = cov;
  rep.rhs = bound;
  rep.margin = cov - bound;
  rep.pass = pass;
  return rep;
}

FkgCheckResult fkg_theorem_check(const FiniteJoint& j) {
  FkgCheckResult res;
  res.var_x = j.marginal_x().variance();
  res.var_y = j.marginal_y().variance();
  require(res.var_x > 0.0 && res.var_y > 0.0, Err::DegenerateMarginal,
          "marginal with zero variance");
  res.cov = j.covariance();
  res.c = best_c(j);
  res.bound = -std::sqrt((1.0 - res.c) * res.var_x * res.var_y);
  res.pass_conclusion = res.cov >= res.bound - 1e-12;

  const double c_eff = std::min(res.c, 1.0 - 1e-9);
  const DiscreteMeasure alpha = pushforward(j.marginal_x());
  const DiscreteMeasure beta = pushforward(j.marginal_y());
  res.kc_ab = k_operator(alpha, beta, c_eff);
  res.k_aa = k_operator(alpha, alpha.reversed(), 0.0);
  res.k_bb = k_operator(beta, beta.reversed(), 0.0);
  res.pass_cov_chain = res.cov >= -std::sqrt(1.0 - c_eff) * res.kc_ab - 1e-10;
  res.pass_cauchy_schwarz = res.kc_ab * res.kc_ab <= res.k_aa * res.k_bb + 1e-10;
  res.pass = res.pass_conclusion && res.pass_cov_chain && res.pass_cauchy_schwarz;
  return res;
}

double HQPair::h(double x, double y) const {
  const double dx = 1.0 - c * x, dy = 1.0 - c * y;
  return (2.0 - c * x) * (2.0 - c - c * y) / (4.0 * std::pow(dx, 1.5) * std::pow(dy, 1.5));
}

double HQPair::q(double x) const { return (1.0 - x) / (1.0 - c * x); }

HQPair h_and_q(double c) {
  require(c >= 0.0 && c < 1.0, Err::BadC, "h/q need c in [0,1)");
  return HQPair{c};
}

double rho(const CubeSet& a, std::span<const double> f, std::span<const double> g) {
  const double vf = variance_on_A(a, f), vg = variance_on_A(a, g);
  require(vf > 0.0 && vg > 0.0, Err::ConstantInput, "correlation of constant function");
  return covariance_on_A(a, f, g) / std::sqrt(vf * vg);
}

double tau(const CubeSet& a, std::span<const double> f, std::span<const double> g) {
  const double vg = variance_on_A(a, g);
  require(vg > 0.0, Err::ConstantInput, "tau needs non-constant g");
  const double vf = variance_on_A(a, f);
  if (vf <= 0.0) return 0.0;  // a = 0, b = mean(f) is exact
  const double r = std::max(0.0, covariance_on_A(a, f, g) / std::sqrt(vf * vg));
  return std::sqrt(std::max(0.0, (1.0 - r * r) * vf));
}

VerificationReport trigonometry_check(const CubeSet& a, std::span<const double> f,
                                      std::span<const double> g,
                                      std::span<const double> h) {
  const double rfg = rho(a, f, g), rfh = rho(a, f, h), rgh = rho(a, g, h);
  VerificationReport rep;
  rep.check = "correlation_triangle";
  rep.lhs = std::pow(std::max(0.0, rfg), 2) + std::pow(std::max(0.0, rfh), 2);
  rep.rhs = 1.0 + std::max(0.0, rgh);
  rep.margin = rep.rhs - rep.lhs;
  rep.pass = rep.lhs <= rep.rhs + 1e-12;
  rep.quantities = {{"rho_fg", rfg}, {"rho_fh", rfh}, {"rho_gh", rgh}};
  return rep;
}

namespace {

void center_on_A(std::vector<double>& f) {
  double m = 0.0;
  for (double x : f) m += x;
  m /= static_cast<double>(f.size());
  for (double& x : f) x -= m;
}

double l2_avg(const std::vector<double>& f) {
  double s = 0.0;
  for (double x : f) s += x * x;
  return std::sqrt(s / static_cast<double>(f.size()));
}

struct PairState {
  std::vector<double> g, h;
  double rho = 1.0;
};

// One half-step: replace f by the unit-variance monotone function most
// anti-aligned with g, i.e. the normalized centered cone projection of -g.
bool anti_align(const PosetEdges& p, const std::vector<double>& g, std::vector<double>& f) {
  std::vector<double> target(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) target[i] = -g[i];
  auto proj = project_monotone(target, p, 1e-11);
  center_on_A(proj.g);
  const double nrm = l2_avg(proj.g);
  if (nrm < 1e-9) return false;  // zero projection: caller restarts
  for (double& x : proj.g) x /= nrm;
  f = std::move(proj.g);
  return true;
}

}  // namespace

CorrelationReport delta_search(const MonotoneSet& a, int restarts, int iters,
                               std::uint64_t seed) {
  require(a.size() >= 2, Err::TooSmall, "delta search needs |A| >= 2");
  require(restarts >= 1 && iters >= 1, Err::ParamOutOfRange, "bad search parameters");
  const CubeSet& s = a.set();
  const PosetEdges p = PosetEdges::restricted(s);
  const std::size_t m = static_cast<std::size_t>(a.size());

  std::vector<PairState> results(static_cast<std::size_t>(restarts));
  par::parallel_for_dynamic(restarts, [&](std::int64_t r) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(r) * 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    auto random_monotone_fn = [&]() {
      std::vector<double> g(m);
      for (int attempt = 0; attempt < 64; ++attempt) {
        if (attempt % 2 == 0) {
          // cone projection of Gaussian noise
          std::vector<double> noise(m);
          for (auto& x : noise) x = gauss(rng);
          auto proj = project_monotone(noise, p, 1e-11);
          g = std::move(proj.g);
        } else {
          // indicator of a random up-set of A
          const double q = unif(rng);
          const auto members = s.members();
          CubeSet mask(s.dim());
          for (Vertex v : members)
            if (unif(rng) < q) mask.insert(v);
          const CubeSet up = upward_closure(std::move(mask));
          for (std::size_t i = 0; i < m; ++i)
            g[i] = up.contains(members[i]) ? 1.0 : 0.0;
        }
        center_on_A(g);
        const double nrm = l2_avg(g);
        if (nrm > 1e-9) {
          for (double& x : g) x /= nrm;
          return g;
        }
      }
      // 64 degenerate draws in a row: fall back to the weight function
      const auto members = s.members();
      for (std::size_t i = 0; i < m; ++i)
        g[i] = static_cast<double>(hamming_weight(members[i]));
      center_on_A(g);
      const double nrm = l2_avg(g);
      for (double& x : g) x /= nrm;
      return g;
    };

    PairState st;
    st.g = random_monotone_fn();
    st.h = random_monotone_fn();
    double prev = 2.0;
    for (int it = 0; it < iters; ++it) {
      if (!anti_align(p, st.g, st.h)) {
        st.h = random_monotone_fn();
        continue;
      }
      if (!anti_align(p, st.h, st.g)) {
        st.g = random_monotone_fn();
        continue;
      }
      const double r = covariance_on_A(s, st.g, st.h) /
                       std::sqrt(variance_on_A(s, st.g) * variance_on_A(s, st.h));
      st.rho = r;
      if (prev - r < 1e-13) break;
      prev = r;
    }
    results[static_cast<std::size_t>(r)] = std::move(st);
  });

  const PairState* best = &results[0];
  for (const auto& st : results)
    if (st.rho < best->rho) best = &st;

  CorrelationReport rep;
  rep.n = a.dim();
  rep.mu = a.density();
  rep.restarts = restarts;
  rep.witness_g = best->g;
  rep.witness_h = best->h;
  // exact feasibility repair, then recompute the reported correlation
  make_feasible(rep.witness_g, p);
  make_feasible(rep.witness_h, p);
  for (auto* w : {&rep.witness_g, &rep.witness_h}) {
    center_on_A(*w);
    const double nrm = l2_avg(*w);
    if (nrm > 0.0)
      for (double& x : *w) x /= nrm;
  }
  const double vg = variance_on_A(s, rep.witness_g);
  const double vh = variance_on_A(s, rep.witness_h);
  double rho_best = 1.0;
  if (vg > 0.0 && vh > 0.0)
    rho_best = covariance_on_A(s, rep.witness_g, rep.witness_h) / std::sqrt(vg * vh);
  rep.delta_hat = std::min(0.0, rho_best);
  rep.bound = -std::sqrt(1.0 - rep.mu);
  rep.margin = rep.delta_hat - rep.bound;
  rep.pass = rep.delta_hat >= rep.bound - 1e-8;
  return rep;
}

nlohmann::json to_json(const CorrelationReport& rep) {
  return {{"n", rep.n},           {"mu", rep.mu},
          {"delta_hat", rep.delta_hat}, {"bound", rep.bound},
          {"margin", rep.margin}, {"restarts", rep.restarts},
          {"witness_g", rep.witness_g}, {"witness_h", rep.witness_h},
          {"pass", rep.pass}};
}

FiniteJoint read_joint_csv(std::istream& in) {
  std::vector<std::array<double, 3>> sup;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    for (char& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream iss(line);
    double x, y, p;
    if (iss >> x >> y >> p) sup.push_back({x, y, p});
    // non-numeric rows (headers) are skipped
  }
  require(!sup.empty(), Err::InvalidJoint, "joint csv has no data rows");
  // tolerate rounded inputs: renormalize when the total is near 1
  double total = 0.0;
  for (const auto& s : sup) total += s[2];
  require(std::abs(total - 1.0) <= 1e-6, Err::InvalidJoint,
          "joint csv probabilities must sum to 1");
  for (auto& s : sup) s[2] /= total;
  return FiniteJoint(std::move(sup));
}

FiniteJoint read_joint_csv_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), Err::Format, "cannot open " + path);
  return read_joint_csv(in);
}

VerificationReport zero_one_fkg_check(const MonotoneSet& a, const CubeSet& b,
                                      const CubeSet& c) {
  const CubeSet& s = a.set();
  require(b.dim() == s.dim() && c.dim() == s.dim(), Err::SizeMismatch,
          "dimension mismatch");
  std::uint64_t nb = 0, nc = 0, nbc = 0;
  for (Vertex v : s.members()) {
    const bool inb = b.contains(v), inc = c.contains(v);
    nb += inb;
    nc += inc;
    nbc += inb && inc;
  }
  require(nb == b.size() && nc == c.size(), Err::NotUpset, "B, C must be subsets of A");
  // indicators must be monotone on A
  const unsigned n = s.dim();
  for (const CubeSet* t : {&b, &c}) {
    for (Vertex v : t->members()) {
      for (unsigned i = 0; i < n; ++i) {
        if (vertex_bit(v, i)) continue;
        const Vertex up = v | (Vertex{1} << i);
        require(!s.contains(up) || t->contains(up), Err::NotUpset,
                "indicator not monotone on A");
      }
    }
  }
  VerificationReport rep;
  rep.check = "zero_one_fkg";
  const double asize = static_cast<double>(s.size());
  rep.lhs = static_cast<double>(nbc) / asize;
  rep.rhs = s.density() * (static_cast<double>(nb) / asize) *
            (static_cast<double>(nc) / asize);
  rep.margin = rep.lhs - rep.rhs;
  // integer form: |B∩C|·2^n >= |B|·|C|
  rep.pass = nbc * s.cube_size() >= nb * nc;
  rep.inputs = {{"n", n}, {"A", s.size()}, {"B", nb}, {"C", nc}, {"BC", nbc}};
  return rep;
}

}  // namespace monocube
