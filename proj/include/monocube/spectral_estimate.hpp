#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "monocube/digraph.hpp"
#include "monocube/report.hpp"

namespace monocube {

struct GapEstimate {
  // min over sampled orderings of the smallest nonzero eigenvalue of the
  // ½-weighted order-subgraph Laplacian
  double lower_certificate = 0.0;
  // min gap ratio over sampled states after local descent
  double empirical_inf = 0.0;
  std::vector<double> argmin;
};

// Sampled estimate of the dynamical spectral gap.  Throws Err::NoEdges when
// the graph has no edges.
GapEstimate dynamical_gap_estimate(const WeightedDigraph& g, int samples,
                                   int descent_iters, std::uint64_t seed);

// ‖f−g‖² >= E⁻(f) / d_w(G) for monotone g.  Throws Err::GNotMonotone.
VerificationReport reverse_poincare_check(const WeightedDigraph& g,
                                          std::span<const double> f,
                                          std::span<const double> g_monotone);

}  // namespace monocube
