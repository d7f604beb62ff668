#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

#include "monocube/errors.hpp"

namespace monocube {

// A hypercube vertex is an integer in [0, 2^n).  Bit i of the index stores
// coordinate i (0-based).  This mapping is frozen: the .mset file format and
// all bitstring I/O depend on it.
using Vertex = std::uint32_t;

constexpr unsigned kMaxDim = 24;

constexpr bool vertex_bit(Vertex v, unsigned i) { return (v >> i) & 1u; }

constexpr Vertex flip_bit(Vertex v, unsigned i) { return v ^ (Vertex{1} << i); }

constexpr Vertex with_bit(Vertex v, unsigned i, bool b) {
  return b ? (v | (Vertex{1} << i)) : (v & ~(Vertex{1} << i));
}

// x <= y in the coordinatewise partial order.
constexpr bool dominated_by(Vertex x, Vertex y) { return (x & ~y) == 0; }

inline unsigned hamming_weight(Vertex v) { return static_cast<unsigned>(std::popcount(v)); }

// Bitstring x1 x2 ... xn, coordinate 1 (= bit 0) first.
inline std::string to_bitstring(Vertex v, unsigned n) {
  std::string s(n, '0');
  for (unsigned i = 0; i < n; ++i)
    if (vertex_bit(v, i)) s[i] = '1';
  return s;
}

inline Vertex from_bitstring(std::string_view s) {
  require(!s.empty() && s.size() <= kMaxDim, Err::Format, "bad bitstring length");
  Vertex v = 0;
  for (unsigned i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      v |= Vertex{1} << i;
    else
      require(s[i] == '0', Err::Format, "bitstring must be 0/1");
  }
  return v;
}

}  // namespace monocube
