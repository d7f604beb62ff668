#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <mutex>
#include <string>
#include <vector>

namespace monocube {

// Directed weighted graph G = (V, w).  Weights are nonnegative; parallel
// additions of the same arc accumulate.  The adjacency cache builds lazily
// and is safe to trigger from concurrent readers.
class WeightedDigraph {
public:
  struct Arc {
    std::int32_t to;
    double w;
  };

  explicit WeightedDigraph(std::int64_t vertex_count);

  WeightedDigraph(const WeightedDigraph& other);
  WeightedDigraph& operator=(const WeightedDigraph& other);
  WeightedDigraph(WeightedDigraph&& other) noexcept;
  WeightedDigraph& operator=(WeightedDigraph&& other) noexcept;

  std::int64_t vertex_count() const { return nv_; }
  std::int64_t arc_count() const { return static_cast<std::int64_t>(arcs_.size()); }

  void add_edge(std::int64_t u, std::int64_t v, double w);

  // max_u sum_v (w(u,v) + w(v,u))
  double max_weighted_degree() const;

  const std::vector<Arc>& out(std::int64_t u) const { build(); return out_[static_cast<std::size_t>(u)]; }
  const std::vector<Arc>& in(std::int64_t v) const { build(); return in_[static_cast<std::size_t>(v)]; }

  void ensure_built() const { build(); }

  bool has_edges() const;

  static WeightedDigraph directed_hypercube(unsigned n);

private:
  void build() const;

  struct Triple {
    std::int32_t u, v;
    double w;
  };
  std::int64_t nv_;
  std::vector<Triple> arcs_;
  std::vector<double> total_degree_;  // in + out weighted degree per vertex
  mutable std::atomic<bool> built_{false};
  mutable std::mutex build_mutex_;
  mutable std::vector<std::vector<Arc>> out_, in_;
};

// Edge-list text format: header `vertices=<count>`, then `u v w` per line.
void write_digraph(std::ostream& out, const WeightedDigraph& g);
WeightedDigraph read_digraph(std::istream& in);
WeightedDigraph read_digraph_file(const std::string& path);

}  // namespace monocube
