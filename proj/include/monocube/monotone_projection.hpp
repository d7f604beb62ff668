#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "monocube/cube_set.hpp"

namespace monocube {

// Covering comparability edges (u, v), each meaning the constraint
// f(u) <= f(v).  Vertices are domain-local indices.
struct PosetEdges {
  std::int64_t vertex_count = 0;
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;

  // The n·2^(n-1) coordinate edges of the hypercube, in (vertex, coordinate)
  // order.
  static PosetEdges hypercube(unsigned n);
  // Coordinate edges with both endpoints in A, in A-local indices (members
  // sorted by vertex index).
  static PosetEdges restricted(const CubeSet& a);
};

struct ProjectionResult {
  std::vector<double> g;       // the projection
  double dist = 0.0;           // ‖f − g‖ in the averaged norm
  bool converged = false;
  std::int64_t sweeps = 0;
  double max_violation = 0.0;  // feasibility residual of g
};

// Euclidean projection of f onto {g : g(u) <= g(v) for all edges} by Dykstra's
// cyclic alternating projections onto the per-edge halfspaces.
ProjectionResult project_monotone(std::span<const double> f, const PosetEdges& p,
                                  double tol = 1e-10, std::int64_t max_sweeps = 1000000);

// ‖f − project_monotone(f, p)‖ in the averaged norm of the domain.
double dist2_mono(std::span<const double> f, const PosetEdges& p, double tol = 1e-10);

// Exact feasibility repair: pushes values upward along edges in topological
// order.  Perturbs by at most the accumulated violation.
void make_feasible(std::span<double> g, const PosetEdges& p);

}  // namespace monocube
