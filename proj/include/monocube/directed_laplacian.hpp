#pragma once

#include <span>
#include <vector>

#include "monocube/digraph.hpp"

namespace monocube {

// Inner product and norm of L^2(V): averages over vertices.
double inner_avg(std::span<const double> a, std::span<const double> b);
double norm_sq_avg(std::span<const double> a);

// (L⁻f)(z) = ½ [ sum_v w(v,z)(f(v)−f(z))⁺ − sum_v w(z,v)(f(z)−f(v))⁺ ].
// Equality edges contribute nothing.  OpenMP over vertices.
void laplacian_apply(const WeightedDigraph& g, std::span<const double> f,
                     std::span<double> out);
std::vector<double> laplacian_apply(const WeightedDigraph& g, std::span<const double> f);

// E⁻(f) = ½ avg_u sum_v w(u,v)((f(u)−f(v))⁺)²; equals −<f, L⁻f>.
double directed_energy(const WeightedDigraph& g, std::span<const double> f);

// ‖L⁻f‖² / E⁻(f).  Throws Err::ZeroEnergy when f is monotone on g.
double gap_ratio(const WeightedDigraph& g, std::span<const double> f);

// Per-coordinate pieces of L⁻ on the directed hypercube: sum_i L⁽ⁱ⁾f = L⁻f.
// Throws Err::WrongDomain unless f has 2^n entries.
std::vector<std::vector<double>> coordinate_laplacians(unsigned n, std::span<const double> f);

// The linear operator that agrees with L⁻ at `pattern`: apply the standard
// (sign-matched) Laplacian of the ½-weighted pattern-antimonotone subgraph.
void frozen_laplacian_apply(const WeightedDigraph& g, std::span<const double> pattern,
                            std::span<const double> f, std::span<double> out);

// True iff f has no antimonotone edge on g (strict violations only).
bool is_monotone_on(const WeightedDigraph& g, std::span<const double> f);

namespace reference {
// Serial implementations kept as the test oracle for the OpenMP kernels.
void laplacian_apply(const WeightedDigraph& g, std::span<const double> f,
                     std::span<double> out);
double directed_energy(const WeightedDigraph& g, std::span<const double> f);
}  // namespace reference

}  // namespace monocube
