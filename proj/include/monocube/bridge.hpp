#pragma once

#include <span>
#include <vector>

#include "monocube/cube_set.hpp"
#include "monocube/fkg.hpp"
#include "monocube/report.hpp"

namespace monocube {

// Extension to the full cube with fill value min_{y in A} f(y); agrees with f
// on A and is constant off A.
std::vector<double> extend_with_min(const MonotoneSet& a, std::span<const double> f);

// mu(A) · E_A(f) = E⁻(T[f]) + E⁻(T[−f]), exact within 1e-12.
VerificationReport extension_identity_check(const MonotoneSet& a,
                                            std::span<const double> f);

// (1 + delta_hat) · Var_A(f) <= E_A(f) + 1e-10.  delta_hat over-estimates
// delta(A), so this checks the stronger inequality; a failure is always an
// implementation bug, never an unlucky search.
VerificationReport gap_bound_from_delta(const MonotoneSet& a, std::span<const double> f,
                                        double delta_hat);

struct GapWitness {
  std::vector<double> witness;
  VerificationReport report;
};

// Produces a non-constant f with (1 + delta_hat) · n · Var_A(f) >= E_A(f):
// any monotone g when delta_hat = 0, else g − h from the search witnesses.
GapWitness delta_witness_from_gap(const MonotoneSet& a, const CorrelationReport& corr);

// Distance-transfer checks for the extension: restriction of the full-cube
// projection is nearly optimal on A, and the tau upper bound holds for every
// supplied monotone witness.
VerificationReport mono_dist_extension_checks(const MonotoneSet& a,
                                              std::span<const double> f,
                                              const CorrelationReport* witnesses = nullptr);

}  // namespace monocube
