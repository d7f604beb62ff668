#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "monocube/cube_set.hpp"
#include "monocube/report.hpp"

namespace monocube {

// Finite atomic measure on (0,1); boundary atoms are dropped on construction
// (every K_c integrand vanishes at 0 and 1, so this is exact).
struct DiscreteMeasure {
  std::vector<std::pair<double, double>> atoms;  // (position, mass)

  static DiscreteMeasure of(std::vector<std::pair<double, double>> atoms);
  DiscreteMeasure reversed() const;  // x -> 1-x
  double total_mass() const;
};

// Finite-support real random variable: (value, probability), values strictly
// increasing, probabilities positive.
struct FiniteDistribution {
  std::vector<std::pair<double, double>> atoms;

  static FiniteDistribution of(std::vector<std::pair<double, double>> atoms);
  double mean() const;
  double variance() const;
};

// Finite-support joint distribution of (X, Y).
class FiniteJoint {
public:
  explicit FiniteJoint(std::vector<std::array<double, 3>> support);  // (x, y, p)

  const std::vector<std::array<double, 3>>& support() const { return support_; }
  const FiniteDistribution& marginal_x() const { return mx_; }
  const FiniteDistribution& marginal_y() const { return my_; }
  double covariance() const;
  double tail(double a, double b) const;  // P[X >= a, Y >= b]

  // The grid distribution on {0,2,3}² used by `fkg --example paper-2.5`.
  static FiniteJoint builtin_example();

private:
  std::vector<std::array<double, 3>> support_;
  FiniteDistribution mx_, my_;
};

// Push-forward of the Lebesgue measure under a -> P[X >= a]: atoms at the
// survival probabilities with masses equal to the value increments.
DiscreteMeasure pushforward(const FiniteDistribution& x);

// K_c(lambda, nu) = sum of m_l m_n min{ sqrt(1-c) x y, (1-x)(1-y)/sqrt(1-c) }.
double k_operator(const DiscreteMeasure& lambda, const DiscreteMeasure& nu, double c);

// Largest c with P[X>=a, Y>=b] >= c P[X>=a] P[Y>=b] for all thresholds;
// exact minimum over support pairs, capped at 1.
double best_c(const FiniteJoint& j);

struct FkgCheckResult {
  double c = 0.0;
  double cov = 0.0, var_x = 0.0, var_y = 0.0;
  double bound = 0.0;       // -sqrt((1-c) VarX VarY)
  double kc_ab = 0.0;       // K_c(alpha, beta)
  double k_aa = 0.0, k_bb = 0.0;
  bool pass_conclusion = false;  // Cov >= bound
  bool pass_cov_chain = false;   // Cov >= -sqrt(1-c) K_c(alpha,beta)
  bool pass_cauchy_schwarz = false;
  bool pass = false;
  VerificationReport report() const;
};

FkgCheckResult fkg_theorem_check(const FiniteJoint& j);

// Closed-form evaluators h(x,y) and the involution q(x) = (1-x)/(1-cx).
struct HQPair {
  double c = 0.0;
  double h(double x, double y) const;
  double q(double x) const;
};
HQPair h_and_q(double c);

// Pearson correlation / best nonneg-affine approximation error on L²(A).
double rho(const CubeSet& a, std::span<const double> f, std::span<const double> g);
double tau(const CubeSet& a, std::span<const double> f, std::span<const double> g);

VerificationReport trigonometry_check(const CubeSet& a, std::span<const double> f,
                                      std::span<const double> g,
                                      std::span<const double> h);

struct CorrelationReport {
  unsigned n = 0;
  double mu = 0.0;
  double delta_hat = 0.0;  // min{0, best rho found}; upper estimate of delta(A)
  double bound = 0.0;      // -sqrt(1 - mu)
  double margin = 0.0;     // delta_hat - bound
  int restarts = 0;
  std::vector<double> witness_g, witness_h;  // monotone, centered, unit variance
  bool pass = false;                         // delta_hat >= bound - 1e-8
};

// Alternating cone-projection minimization of rho over monotone pairs on A.
CorrelationReport delta_search(const MonotoneSet& a, int restarts = 32, int iters = 64,
                               std::uint64_t seed = 1);

nlohmann::json to_json(const CorrelationReport& rep);

// CSV rows `x,y,p`, header line optional.
FiniteJoint read_joint_csv(std::istream& in);
FiniteJoint read_joint_csv_file(const std::string& path);

// E_{x in A}[1_B 1_C] >= mu(A) E_A[1_B] E_A[1_C], checked in exact integers.
VerificationReport zero_one_fkg_check(const MonotoneSet& a, const CubeSet& b,
                                      const CubeSet& c);

}  // namespace monocube
