#include "monocube/digraph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "monocube/errors.hpp"

namespace monocube {

WeightedDigraph::WeightedDigraph(std::int64_t vertex_count) : nv_(vertex_count) {
  require(vertex_count >= 1, Err::ParamOutOfRange, "vertex count must be positive");
  total_degree_.assign(static_cast<std::size_t>(nv_), 0.0);
}

WeightedDigraph::WeightedDigraph(const WeightedDigraph& other)
    : nv_(other.nv_), arcs_(other.arcs_), total_degree_(other.total_degree_) {}

WeightedDigraph& WeightedDigraph::operator=(const WeightedDigraph& other) {
  if (this != &other) {
    nv_ = other.nv_;
    arcs_ = other.arcs_;
    total_degree_ = other.total_degree_;
    built_.store(false, std::memory_order_release);
    out_.clear();
    in_.clear();
  }
  return *this;
}

WeightedDigraph::WeightedDigraph(WeightedDigraph&& other) noexcept
    : nv_(other.nv_),
      arcs_(std::move(other.arcs_)),
      total_degree_(std::move(other.total_degree_)),
      out_(std::move(other.out_)),
      in_(std::move(other.in_)) {
  built_.store(other.built_.load(std::memory_order_acquire), std::memory_order_release);
}

WeightedDigraph& WeightedDigraph::operator=(WeightedDigraph&& other) noexcept {
  if (this != &other) {
    nv_ = other.nv_;
    arcs_ = std::move(other.arcs_);
    total_degree_ = std::move(other.total_degree_);
    out_ = std::move(other.out_);
    in_ = std::move(other.in_);
    built_.store(other.built_.load(std::memory_order_acquire), std::memory_order_release);
  }
  return *this;
}

void WeightedDigraph::add_edge(std::int64_t u, std::int64_t v, double w) {
  require(u >= 0 && u < nv_ && v >= 0 && v < nv_, Err::ParamOutOfRange, "arc endpoint out of range");
  require(w >= 0.0 && std::isfinite(w), Err::ParamOutOfRange, "weight must be nonnegative");
  if (w == 0.0) return;
  arcs_.push_back({static_cast<std::int32_t>(u), static_cast<std::int32_t>(v), w});
  total_degree_[static_cast<std::size_t>(u)] += w;
  total_degree_[static_cast<std::size_t>(v)] += w;
  built_.store(false, std::memory_order_release);
}

double WeightedDigraph::max_weighted_degree() const {
  double d = 0.0;
  for (double t : total_degree_) d = std::max(d, t);
  return d;
}

bool WeightedDigraph::has_edges() const { return !arcs_.empty(); }

void WeightedDigraph::build() const {
  if (built_.load(std::memory_order_acquire)) return;
  std::lock_guard<std::mutex> lock(build_mutex_);
  if (built_.load(std::memory_order_relaxed)) return;
  out_.assign(static_cast<std::size_t>(nv_), {});
  in_.assign(static_cast<std::size_t>(nv_), {});
  for (const Triple& a : arcs_) {
    out_[static_cast<std::size_t>(a.u)].push_back({a.v, a.w});
    in_[static_cast<std::size_t>(a.v)].push_back({a.u, a.w});
  }
  built_.store(true, std::memory_order_release);
}

WeightedDigraph WeightedDigraph::directed_hypercube(unsigned n) {
  require(n >= 1 && n <= 24, Err::ParamOutOfRange, "hypercube dimension out of range");
  const std::int64_t total = std::int64_t{1} << n;
  WeightedDigraph g(total);
  g.arcs_.reserve(static_cast<std::size_t>(total / 2 * n));
  for (std::int64_t x = 0; x < total; ++x) {
    for (unsigned i = 0; i < n; ++i) {
      if (!((x >> i) & 1)) g.add_edge(x, x | (std::int64_t{1} << i), 1.0);
    }
  }
  return g;
}

void write_digraph(std::ostream& out, const WeightedDigraph& g) {
  out << "vertices=" << g.vertex_count() << "\n";
  for (std::int64_t u = 0; u < g.vertex_count(); ++u)
    for (const auto& a : g.out(u)) out << u << ' ' << a.to << ' ' << a.w << "\n";
}

WeightedDigraph read_digraph(std::istream& in) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)) && line.rfind("vertices=", 0) == 0,
          Err::Format, "digraph: missing vertices= header");
  WeightedDigraph g(std::stoll(line.substr(9)));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream iss(line);
    std::int64_t u, v;
    double w;
    require(static_cast<bool>(iss >> u >> v >> w), Err::Format, "digraph: bad edge line");
    g.add_edge(u, v, w);
  }
  return g;
}

WeightedDigraph read_digraph_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), Err::Format, "cannot open " + path);
  return read_digraph(in);
}

}  // namespace monocube
