#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "monocube/digraph.hpp"

namespace monocube {

struct FlowTrace {
  std::vector<double> t;
  std::vector<double> energy;        // E⁻(f(t))
  std::vector<double> lap_norm_sq;   // ‖L⁻f(t)‖²
};

struct FlowOptions {
  double step = 0.0;      // 0 -> min(0.1 / d_w(G), 0.01)
  double tol = 1e-10;     // stop when ‖L⁻f‖ <= tol
  double t_max = 50.0;
  std::int64_t record_stride = 1;
  // called at every recorded point with (t, state)
  std::function<void(double, std::span<const double>)> observer;
};

struct FlowResult {
  std::vector<double> equilibrium;
  FlowTrace trace;
  bool converged = false;  // false: t_max reached with residual above tol
  double residual = 0.0;   // ‖L⁻f‖ at the end
  double t_end = 0.0;
  std::int64_t steps = 0;
};

// Integrates f' = L⁻f by classical 4-stage Runge–Kutta with fixed step.
// A monotone initial state returns unchanged after zero steps.
FlowResult heat_flow_solve(const WeightedDigraph& g, std::vector<double> f0,
                           const FlowOptions& opt = {});

// CSV with columns t, energy, laplacian_norm_sq.
void write_trace_csv(std::ostream& out, const FlowTrace& trace);
void write_trace_csv_file(const std::string& path, const FlowTrace& trace);

}  // namespace monocube
