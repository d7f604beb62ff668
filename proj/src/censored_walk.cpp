#include "monocube/censored_walk.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "monocube/errors.hpp"
#include "monocube/parallel.hpp"

namespace monocube {

CensoredKernel::CensoredKernel(const CubeSet& a) : n_(a.dim()), states_(a.members()) {
  require(states_.size() >= 2, Err::TooSmall, "censored walk needs |A| >= 2");
  std::vector<std::int32_t> local(a.cube_size(), -1);
  for (std::size_t i = 0; i < states_.size(); ++i)
    local[states_[i]] = static_cast<std::int32_t>(i);
  nbr_.resize(states_.size());
  stay_.resize(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) {
    const Vertex v = states_[i];
    for (unsigned c = 0; c < n_; ++c) {
      const Vertex w = flip_bit(v, c);
      if (a.contains(w)) nbr_[i].push_back(local[w]);
    }
    stay_[i] = 1.0 - static_cast<double>(nbr_[i].size()) / (2.0 * n_);
  }
}

void CensoredKernel::apply(std::span<const double> f, std::span<double> out) const {
  require(f.size() == states_.size() && out.size() == states_.size(), Err::SizeMismatch,
          "state vector size mismatch");
  const double move = 1.0 / (2.0 * n_);
  par::parallel_for(state_count(), [&](std::int64_t s) {
    double acc = stay_[static_cast<std::size_t>(s)] * f[static_cast<std::size_t>(s)];
    for (std::int32_t t : nbr_[static_cast<std::size_t>(s)]) acc += move * f[t];
    out[static_cast<std::size_t>(s)] = acc;
  });
}

double CensoredKernel::entry(std::int64_t s, std::int64_t t) const {
  if (s == t) return stay_[static_cast<std::size_t>(s)];
  for (std::int32_t u : nbr_[static_cast<std::size_t>(s)])
    if (u == t) return 1.0 / (2.0 * n_);
  return 0.0;
}

double dirichlet_form(const CubeSet& a, std::span<const double> f) {
  require(a.size() >= 2, Err::TooSmall, "Dirichlet form needs |A| >= 2");
  const auto members = a.members();
  require(f.size() == members.size(), Err::SizeMismatch, "function size mismatch");
  std::vector<std::int32_t> local(a.cube_size(), -1);
  for (std::size_t i = 0; i < members.size(); ++i)
    local[members[i]] = static_cast<std::int32_t>(i);
  const unsigned n = a.dim();
  const double s = par::sum_indexed(static_cast<std::int64_t>(members.size()), [&](std::int64_t i) {
    const Vertex v = members[static_cast<std::size_t>(i)];
    double acc = 0.0;
    for (unsigned c = 0; c < n; ++c) {
      const Vertex w = flip_bit(v, c);
      if (a.contains(w)) {
        const double d = f[static_cast<std::size_t>(i)] - f[local[w]];
        acc += d * d;
      }
    }
    return acc;
  });
  return 0.25 * s / static_cast<double>(members.size());
}

double mean_on_A(const CubeSet& a, std::span<const double> f) {
  require(f.size() == a.size(), Err::SizeMismatch, "function size mismatch");
  double s = 0.0;
  for (double x : f) s += x;
  return s / static_cast<double>(f.size());
}

double variance_on_A(const CubeSet& a, std::span<const double> f) {
  require(a.size() >= 2, Err::TooSmall, "variance needs |A| >= 2");
  const double m = mean_on_A(a, f);
  double s = 0.0;
  for (double x : f) s += (x - m) * (x - m);
  return s / static_cast<double>(f.size());
}

double covariance_on_A(const CubeSet& a, std::span<const double> f,
                       std::span<const double> g) {
  require(a.size() >= 2, Err::TooSmall, "covariance needs |A| >= 2");
  require(f.size() == g.size(), Err::SizeMismatch, "function size mismatch");
  const double mf = mean_on_A(a, f), mg = mean_on_A(a, g);
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += (f[i] - mf) * (g[i] - mg);
  return s / static_cast<double>(f.size());
}

namespace {

bool induced_connected(const CensoredKernel& k) {
  const std::int64_t m = k.state_count();
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  std::vector<std::int32_t> stack{0};
  seen[0] = 1;
  std::int64_t visited = 1;
  while (!stack.empty()) {
    const std::int32_t s = stack.back();
    stack.pop_back();
    for (std::int32_t t : k.neighbors()[static_cast<std::size_t>(s)]) {
      if (!seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = 1;
        ++visited;
        stack.push_back(t);
      }
    }
  }
  return visited == m;
}

Eigen::MatrixXd induced_laplacian(const CensoredKernel& k) {
  const std::int64_t m = k.state_count();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(m, m);
  for (std::int64_t s = 0; s < m; ++s) {
    const auto& nb = k.neighbors()[static_cast<std::size_t>(s)];
    lap(s, s) = static_cast<double>(nb.size());
    for (std::int32_t t : nb) lap(s, t) = -1.0;
  }
  return lap;
}

// Smallest nonzero Laplacian eigenvalue via Lanczos on cI - L with the
// all-ones vector deflated; full reorthogonalization.
std::pair<double, std::vector<double>> lanczos_lambda2(const CensoredKernel& k,
                                                       double tol = 1e-12,
                                                       int max_iter = 600) {
  const std::int64_t m = k.state_count();
  const double shift = 2.0 * k.dim() + 1.0;
  auto op = [&](const std::vector<double>& x, std::vector<double>& y) {
    // y = (shift I - L) x
    par::parallel_for(m, [&](std::int64_t s) {
      const auto& nb = k.neighbors()[static_cast<std::size_t>(s)];
      double acc = (shift - static_cast<double>(nb.size())) * x[static_cast<std::size_t>(s)];
      for (std::int32_t t : nb) acc += x[static_cast<std::size_t>(t)];
      y[static_cast<std::size_t>(s)] = acc;
    });
  };
  auto deflate = [&](std::vector<double>& x) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(m);
    for (double& v : x) v -= mean;
  };
  auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::int64_t i = 0; i < m; ++i) s += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
    return s;
  };

  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  std::vector<std::vector<double>> basis;
  std::vector<double> alpha, beta;
  std::vector<double> v(static_cast<std::size_t>(m));
  for (auto& x : v) x = gauss(rng);
  deflate(v);
  double nrm = std::sqrt(dot(v, v));
  for (auto& x : v) x /= nrm;
  basis.push_back(v);

  std::vector<double> w(static_cast<std::size_t>(m));
  double theta = 0.0;
  std::vector<double> ritz_weights;
  for (int it = 0; it < max_iter; ++it) {
    op(basis.back(), w);
    deflate(w);
    const double a = dot(w, basis.back());
    alpha.push_back(a);
    for (std::int64_t i = 0; i < m; ++i) w[static_cast<std::size_t>(i)] -= a * basis.back()[static_cast<std::size_t>(i)];
    if (basis.size() >= 2) {
      const auto& prev = basis[basis.size() - 2];
      for (std::int64_t i = 0; i < m; ++i) w[static_cast<std::size_t>(i)] -= beta.back() * prev[static_cast<std::size_t>(i)];
    }
    for (const auto& b : basis) {  // full reorthogonalization
      const double c = dot(w, b);
      for (std::int64_t i = 0; i < m; ++i) w[static_cast<std::size_t>(i)] -= c * b[static_cast<std::size_t>(i)];
    }
    const double nb = std::sqrt(dot(w, w));
    const int kdim = static_cast<int>(alpha.size());
    // tridiagonal eigensolve of the current Krylov section
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(kdim, kdim);
    for (int i = 0; i < kdim; ++i) {
      tri(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < kdim) tri(i, i + 1) = tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    const int top = kdim - 1;
    theta = es.eigenvalues()(top);
    ritz_weights.assign(es.eigenvectors().col(top).data(),
                        es.eigenvectors().col(top).data() + kdim);
    const double resid = std::abs(nb * ritz_weights[static_cast<std::size_t>(kdim - 1)]);
    if (resid <= tol * shift || nb <= 1e-14 || it == max_iter - 1) break;
    beta.push_back(nb);
    for (auto& x : w) x /= nb;
    basis.push_back(w);
  }

  std::vector<double> vec(static_cast<std::size_t>(m), 0.0);
  for (std::size_t j = 0; j < ritz_weights.size(); ++j)
    for (std::int64_t i = 0; i < m; ++i)
      vec[static_cast<std::size_t>(i)] += ritz_weights[j] * basis[j][static_cast<std::size_t>(i)];
  return {shift - theta, vec};
}

}  // namespace

SpectralReport spectral_gap_gamma(const CubeSet& a, std::int64_t dense_cutoff) {
  CensoredKernel k(a);
  SpectralReport rep;
  rep.n = a.dim();
  rep.mu = a.density();
  rep.bound = (1.0 - std::sqrt(1.0 - rep.mu)) / static_cast<double>(rep.n);
  rep.connected = induced_connected(k);
  if (!rep.connected) {
    rep.gamma = 0.0;
    rep.margin = rep.gamma - rep.bound;
    rep.pass = false;
    return rep;
  }
  const std::int64_t m = k.state_count();
  double lambda2 = 0.0;
  if (m <= dense_cutoff) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(induced_laplacian(k));
    lambda2 = es.eigenvalues()(1);
    rep.minimizer.assign(es.eigenvectors().col(1).data(),
                         es.eigenvectors().col(1).data() + m);
  } else {
    auto [l2, vec] = lanczos_lambda2(k);
    lambda2 = l2;
    rep.minimizer = std::move(vec);
  }
  rep.gamma = lambda2 / (2.0 * rep.n);
  rep.margin = rep.gamma - rep.bound;
  rep.pass = rep.margin >= -1e-12;
  return rep;
}

nlohmann::json to_json(const SpectralReport& rep) {
  return {{"n", rep.n},         {"mu", rep.mu},     {"gamma", rep.gamma},
          {"bound", rep.bound}, {"margin", rep.margin}, {"pass", rep.pass}};
}

namespace {

double max_tv_of_power(const Eigen::MatrixXd& q, const Eigen::VectorXd& evals,
                       std::int64_t t) {
  const std::int64_t m = q.rows();
  Eigen::VectorXd powed(m);
  for (std::int64_t i = 0; i < m; ++i) {
    const double lam = std::min(1.0, std::max(0.0, evals(i)));
    powed(i) = std::pow(lam, static_cast<double>(t));
  }
  Eigen::MatrixXd pt = (q * powed.asDiagonal()) * q.transpose();
  const double unif = 1.0 / static_cast<double>(m);
  double worst = 0.0;
  for (std::int64_t r = 0; r < m; ++r) {
    double tv = 0.0;
    for (std::int64_t c2 = 0; c2 < m; ++c2) tv += std::abs(pt(r, c2) - unif);
    worst = std::max(worst, 0.5 * tv);
  }
  return worst;
}

}  // namespace

MixingResult mixing_time_tv(const CubeSet& a, double eps, std::int64_t exact_cutoff) {
  CensoredKernel k(a);
  MixingResult res;
  const unsigned n = a.dim();
  const double mu = a.density();
  res.bound = 2.0 * n / mu * std::log(4.0 * std::pow(2.0, static_cast<double>(n)) * mu);
  const std::int64_t m = k.state_count();

  if (m <= exact_cutoff) {
    Eigen::MatrixXd p(m, m);
    for (std::int64_t s = 0; s < m; ++s)
      for (std::int64_t t = 0; t < m; ++t) p(s, t) = k.entry(s, t);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p);
    const Eigen::MatrixXd q = es.eigenvectors();
    const Eigen::VectorXd evals = es.eigenvalues();

    auto tv_at = [&](std::int64_t t) {
      const double tv = max_tv_of_power(q, evals, t);
      res.tv_curve.emplace_back(t, tv);
      return tv;
    };

    if (tv_at(1) <= eps) {
      res.t_mix = 1;
    } else {
      std::int64_t lo = 1, hi = 2;
      while (tv_at(hi) > eps) {
        lo = hi;
        hi *= 2;
        if (hi > (std::int64_t{1} << 50)) {
          res.exact = false;  // disconnected or pathological: never mixes
          res.t_mix = hi;
          res.pass = false;
          return res;
        }
      }
      while (hi - lo > 1) {  // max-TV is nonincreasing in t
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (tv_at(mid) <= eps)
          hi = mid;
        else
          lo = mid;
      }
      res.t_mix = hi;
    }
    res.exact = true;
  } else {
    // approximate fallback: distribution decay from a few starts only
    res.exact = false;
    std::mt19937_64 rng(12345);
    std::vector<std::int64_t> starts;
    for (int i = 0; i < 4; ++i)
      starts.push_back(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(m)));
    const double unif = 1.0 / static_cast<double>(m);
    std::int64_t t = 0;
    double worst = 1.0;
    std::vector<std::vector<double>> dists;
    for (std::int64_t s : starts) {
      std::vector<double> d(static_cast<std::size_t>(m), 0.0);
      d[static_cast<std::size_t>(s)] = 1.0;
      dists.push_back(std::move(d));
    }
    std::vector<double> tmp(static_cast<std::size_t>(m));
    const std::int64_t cap = static_cast<std::int64_t>(res.bound * 4) + 64;
    while (worst > eps && t < cap) {
      ++t;
      worst = 0.0;
      for (auto& d : dists) {
        k.apply(d, tmp);
        d.swap(tmp);
        double tv = 0.0;
        for (double x : d) tv += std::abs(x - unif);
        worst = std::max(worst, 0.5 * tv);
      }
      if ((t & (t - 1)) == 0) res.tv_curve.emplace_back(t, worst);
    }
    res.t_mix = t;
  }
  std::sort(res.tv_curve.begin(), res.tv_curve.end());
  res.tv_curve.erase(std::unique(res.tv_curve.begin(), res.tv_curve.end(),
                                 [](const auto& x, const auto& y) { return x.first == y.first; }),
                     res.tv_curve.end());
  res.pass = static_cast<double>(res.t_mix) <= res.bound;
  return res;
}

WalkSummary simulate_walk(const CubeSet& a, Vertex start, std::int64_t steps,
                          std::uint64_t seed) {
  require(a.contains(start), Err::StartNotInA, "start vertex not in A");
  const auto members = a.members();
  std::vector<std::int32_t> local(a.cube_size(), -1);
  for (std::size_t i = 0; i < members.size(); ++i)
    local[members[i]] = static_cast<std::int32_t>(i);
  const unsigned n = a.dim();
  WalkSummary sum;
  sum.visit_counts.assign(members.size(), 0);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<unsigned> coord(0, n - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  Vertex x = start;
  const double unif = 1.0 / static_cast<double>(members.size());
  std::int64_t next_checkpoint = 1;
  for (std::int64_t t = 1; t <= steps; ++t) {
    const unsigned i = coord(rng);
    const Vertex y = flip_bit(x, i);
    if (a.contains(y)) {
      if (coin(rng)) x = y;
    } else {
      ++sum.censored_steps;
    }
    ++sum.visit_counts[static_cast<std::size_t>(local[x])];
    if (t == next_checkpoint || t == steps) {
      double tv = 0.0;
      for (std::int64_t c : sum.visit_counts)
        tv += std::abs(static_cast<double>(c) / static_cast<double>(t) - unif);
      sum.tv_checkpoints.emplace_back(t, 0.5 * tv);
      next_checkpoint *= 2;
    }
  }
  sum.censored_fraction =
      steps > 0 ? static_cast<double>(sum.censored_steps) / static_cast<double>(steps) : 0.0;
  sum.end = x;
  return sum;
}

}  // namespace monocube
