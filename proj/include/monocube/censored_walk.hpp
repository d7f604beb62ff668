#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "monocube/cube_set.hpp"

namespace monocube {

// Lazy hypercube walk censored to A.  From x: pick coordinate i uniformly;
// if x^(+/-i) lies in A move with probability ½, else stay.  Row-stochastic,
// symmetric, uniform stationary distribution on A, P(x,x) >= ½.
class CensoredKernel {
public:
  explicit CensoredKernel(const CubeSet& a);  // throws Err::TooSmall if |A| < 2

  std::int64_t state_count() const { return static_cast<std::int64_t>(states_.size()); }
  unsigned dim() const { return n_; }
  const std::vector<Vertex>& states() const { return states_; }
  const std::vector<std::vector<std::int32_t>>& neighbors() const { return nbr_; }

  // out = P f (= f P by symmetry)
  void apply(std::span<const double> f, std::span<double> out) const;

  double entry(std::int64_t s, std::int64_t t) const;

private:
  unsigned n_;
  std::vector<Vertex> states_;
  std::vector<std::vector<std::int32_t>> nbr_;  // induced edges, state-local
  std::vector<double> stay_;                    // 1 - deg_A / (2n)
};

// Functions on A are vectors indexed by the sorted member order of A.

// E_A(f) = ¼ avg_{x in A} sum_i (f(x) - f(x^i))² 1[x^i in A]; |A| >= 2.
double dirichlet_form(const CubeSet& a, std::span<const double> f);

// Variance of f under the uniform measure on A; |A| >= 2.
double variance_on_A(const CubeSet& a, std::span<const double> f);

double mean_on_A(const CubeSet& a, std::span<const double> f);
double covariance_on_A(const CubeSet& a, std::span<const double> f,
                       std::span<const double> g);

struct SpectralReport {
  unsigned n = 0;
  double mu = 0.0;
  double gamma = 0.0;
  double bound = 0.0;   // (1 - sqrt(1 - mu)) / n
  double margin = 0.0;  // gamma - bound
  bool pass = false;
  bool connected = true;
  std::vector<double> minimizer;  // eigenvector achieving the gap
};

// gamma = lambda_2 / (2n) with lambda_2 the smallest nonzero eigenvalue of the
// induced-subgraph Laplacian.  Dense eigensolve up to `dense_cutoff` states,
// Lanczos with constant-vector deflation above.  Disconnected induced graphs
// (tagged non-monotone sets only) report gamma = 0.
SpectralReport spectral_gap_gamma(const CubeSet& a, std::int64_t dense_cutoff = 4096);

nlohmann::json to_json(const SpectralReport& rep);

struct MixingResult {
  std::int64_t t_mix = 0;
  double bound = 0.0;  // 2n/mu · log(4·2^n·mu)
  bool pass = false;   // t_mix <= bound
  bool exact = true;
  std::vector<std::pair<std::int64_t, double>> tv_curve;  // (t, max-TV)
};

// Smallest t with max over starts of TV(P^t(x,·), uniform on A) <= eps.
MixingResult mixing_time_tv(const CubeSet& a, double eps = 0.25,
                            std::int64_t exact_cutoff = 4096);

struct WalkSummary {
  std::vector<std::int64_t> visit_counts;  // state-local
  std::int64_t censored_steps = 0;
  double censored_fraction = 0.0;
  std::vector<std::pair<std::int64_t, double>> tv_checkpoints;
  Vertex end = 0;
};

WalkSummary simulate_walk(const CubeSet& a, Vertex start, std::int64_t steps,
                          std::uint64_t seed);

}  // namespace monocube
