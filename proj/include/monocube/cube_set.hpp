#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "monocube/bits.hpp"

namespace monocube {

// A subset of {0,1}^n stored as a bitmask over the 2^n vertex indices.
class CubeSet {
public:
  explicit CubeSet(unsigned n);
  static CubeSet full(unsigned n);

  unsigned dim() const { return n_; }
  std::uint64_t cube_size() const { return std::uint64_t{1} << n_; }
  std::uint64_t size() const { return count_; }
  double density() const { return static_cast<double>(count_) / static_cast<double>(cube_size()); }

  bool contains(Vertex v) const {
    return (words_[v >> 6] >> (v & 63u)) & 1u;
  }
  void insert(Vertex v);
  void erase(Vertex v);

  std::vector<Vertex> members() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

  bool operator==(const CubeSet& other) const {
    return n_ == other.n_ && words_ == other.words_;
  }

private:
  unsigned n_;
  std::vector<std::uint64_t> words_;
  std::uint64_t count_;
};

// An edge (lower, upper) with lower in the set and upper = lower + e_i missing.
struct MonotoneViolation {
  Vertex lower;
  Vertex upper;
};

std::optional<MonotoneViolation> find_monotone_violation(const CubeSet& s);

// A validated upward-closed subset of the hypercube.
class MonotoneSet {
public:
  // Throws MonocubeError(Err::NotMonotone) with the witness edge in the message.
  static MonotoneSet validate(CubeSet s);
  static std::optional<MonotoneSet> try_validate(CubeSet s,
                                                 MonotoneViolation* witness = nullptr);

  const CubeSet& set() const { return set_; }
  unsigned dim() const { return set_.dim(); }
  std::uint64_t size() const { return set_.size(); }
  double density() const { return set_.density(); }
  bool contains(Vertex v) const { return set_.contains(v); }
  std::vector<Vertex> members() const { return set_.members(); }
  bool empty() const { return set_.size() == 0; }

private:
  explicit MonotoneSet(CubeSet s) : set_(std::move(s)) {}
  CubeSet set_;
};

// Minimal monotone superset; idempotent and monotone in its argument.
CubeSet upward_closure(CubeSet s);

// Named families.
MonotoneSet full_cube(unsigned n);
MonotoneSet two_subcubes(unsigned n, unsigned m);           // n/4 <= m <= n/2
MonotoneSet halfspace(unsigned n, const std::vector<double>& a, double b);
MonotoneSet weight_threshold(unsigned n, unsigned k);       // {x : |x| >= k}
// {x : |x| != floor(n/2)} + {xstar}.  Not monotone; returned as a plain CubeSet
// for walk experiments.  xstar must have weight floor(n/2).
CubeSet middle_slice_bridge(unsigned n, std::optional<Vertex> xstar = std::nullopt);

// Upward closure of an i.i.d. Bernoulli(p) vertex mask; deterministic in seed.
MonotoneSet random_monotone(unsigned n, double p, std::uint64_t seed);

// Exhaustive enumeration of all upward-closed sets (empty set included).
// Counts 3, 6, 20, 168, 7581 for n = 1..5; intended for n <= 5.
std::vector<CubeSet> enumerate_all_monotone(unsigned n);

// Minimal members of an upward-closed set.
std::vector<Vertex> minimal_members(const CubeSet& s);

// .mset text format:
//   n=<dim>
//   hex=<2^n-bit mask, hex digit j encodes vertices 4j..4j+3, low bit first>
//   minimal=<space-separated bitstrings>        (optional)
void write_mset(std::ostream& out, const CubeSet& s, bool with_minimal = true);
CubeSet read_mset(std::istream& in);
void write_mset_file(const std::string& path, const CubeSet& s, bool with_minimal = true);
CubeSet read_mset_file(const std::string& path);

}  // namespace monocube
