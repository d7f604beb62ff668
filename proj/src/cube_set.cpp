#include "monocube/cube_set.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "monocube/errors.hpp"

namespace monocube {

CubeSet::CubeSet(unsigned n) : n_(n), count_(0) {
  require(n >= 1 && n <= kMaxDim, Err::ParamOutOfRange, "dimension out of range");
  words_.assign(((std::uint64_t{1} << n) + 63) / 64, 0);
}

CubeSet CubeSet::full(unsigned n) {
  CubeSet s(n);
  const std::uint64_t total = s.cube_size();
  for (std::uint64_t w = 0; w < s.words_.size(); ++w) s.words_[w] = ~std::uint64_t{0};
  // clear bits above 2^n
  const unsigned rem = total % 64;
  if (rem != 0) s.words_.back() &= (std::uint64_t{1} << rem) - 1;
  s.count_ = total;
  return s;
}

void CubeSet::insert(Vertex v) {
  std::uint64_t& w = words_[v >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (v & 63u);
  if (!(w & bit)) {
    w |= bit;
    ++count_;
  }
}

void CubeSet::erase(Vertex v) {
  std::uint64_t& w = words_[v >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (v & 63u);
  if (w & bit) {
    w &= ~bit;
    --count_;
  }
}

std::vector<Vertex> CubeSet::members() const {
  std::vector<Vertex> out;
  out.reserve(count_);
  const std::uint64_t total = cube_size();
  for (Vertex v = 0; v < total; ++v)
    if (contains(v)) out.push_back(v);
  return out;
}

std::optional<MonotoneViolation> find_monotone_violation(const CubeSet& s) {
  const unsigned n = s.dim();
  const std::uint64_t total = s.cube_size();
  for (Vertex v = 0; v < total; ++v) {
    if (!s.contains(v)) continue;
    for (unsigned i = 0; i < n; ++i) {
      if (vertex_bit(v, i)) continue;
      const Vertex up = v | (Vertex{1} << i);
      if (!s.contains(up)) return MonotoneViolation{v, up};
    }
  }
  return std::nullopt;
}

MonotoneSet MonotoneSet::validate(CubeSet s) {
  if (auto w = find_monotone_violation(s)) {
    fail(Err::NotMonotone, "not upward closed: " + to_bitstring(w->lower, s.dim()) +
                               " in set but " + to_bitstring(w->upper, s.dim()) +
                               " missing");
  }
  return MonotoneSet(std::move(s));
}

std::optional<MonotoneSet> MonotoneSet::try_validate(CubeSet s, MonotoneViolation* witness) {
  if (auto w = find_monotone_violation(s)) {
    if (witness) *witness = *w;
    return std::nullopt;
  }
  return MonotoneSet(std::move(s));
}

CubeSet upward_closure(CubeSet s) {
  const unsigned n = s.dim();
  const std::uint64_t total = s.cube_size();
  // one pass per coordinate closes the set (zeta-transform sweep)
  for (unsigned i = 0; i < n; ++i) {
    const Vertex bit = Vertex{1} << i;
    for (Vertex v = 0; v < total; ++v) {
      if ((v & bit) && !s.contains(v) && s.contains(v ^ bit)) s.insert(v);
    }
  }
  return s;
}

MonotoneSet full_cube(unsigned n) { return MonotoneSet::validate(CubeSet::full(n)); }

MonotoneSet two_subcubes(unsigned n, unsigned m) {
  require(m >= 1 && 4 * m >= n && 2 * m <= n, Err::ParamOutOfRange,
          "two_subcubes requires n/4 <= m <= n/2");
  const Vertex mask1 = (Vertex{1} << m) - 1;
  const Vertex mask2 = ((Vertex{1} << m) - 1) << m;
  CubeSet s(n);
  const std::uint64_t total = s.cube_size();
  for (Vertex v = 0; v < total; ++v)
    if ((v & mask1) == mask1 || (v & mask2) == mask2) s.insert(v);
  return MonotoneSet::validate(std::move(s));
}

MonotoneSet halfspace(unsigned n, const std::vector<double>& a, double b) {
  require(a.size() == n, Err::ParamOutOfRange, "halfspace needs n coefficients");
  for (double ai : a)
    require(ai >= 0.0 && std::isfinite(ai), Err::ParamOutOfRange,
            "halfspace coefficients must be nonnegative");
  CubeSet s(n);
  const std::uint64_t total = s.cube_size();
  for (Vertex v = 0; v < total; ++v) {
    double dot = 0.0;
    for (unsigned i = 0; i < n; ++i)
      if (vertex_bit(v, i)) dot += a[i];
    if (dot >= b) s.insert(v);
  }
  return MonotoneSet::validate(std::move(s));
}

MonotoneSet weight_threshold(unsigned n, unsigned k) {
  require(k <= n + 1, Err::ParamOutOfRange, "weight threshold out of range");
  CubeSet s(n);
  const std::uint64_t total = s.cube_size();
  for (Vertex v = 0; v < total; ++v)
    if (hamming_weight(v) >= k) s.insert(v);
  return MonotoneSet::validate(std::move(s));
}

CubeSet middle_slice_bridge(unsigned n, std::optional<Vertex> xstar) {
  require(n >= 2, Err::ParamOutOfRange, "middle_slice_bridge needs n >= 2");
  const unsigned half = n / 2;
  Vertex star = xstar.value_or((Vertex{1} << half) - 1);
  require(hamming_weight(star) == half, Err::ParamOutOfRange,
          "bridge vertex must have weight floor(n/2)");
  CubeSet s(n);
  const std::uint64_t total = s.cube_size();
  for (Vertex v = 0; v < total; ++v)
    if (hamming_weight(v) != half) s.insert(v);
  s.insert(star);
  return s;
}

MonotoneSet random_monotone(unsigned n, double p, std::uint64_t seed) {
  require(p > 0.0 && p < 1.0, Err::ParamOutOfRange, "bias must be in (0,1)");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  CubeSet s(n);
  const std::uint64_t total = s.cube_size();
  for (Vertex v = 0; v < total; ++v)
    if (unif(rng) < p) s.insert(v);
  return MonotoneSet::validate(upward_closure(std::move(s)));
}

namespace {

// Vertices in decreasing weight order so that all upper covers of a vertex are
// decided before the vertex itself.
void enumerate_rec(const std::vector<Vertex>& order, std::size_t pos, CubeSet& cur,
                   std::vector<CubeSet>& out) {
  if (pos == order.size()) {
    out.push_back(cur);
    return;
  }
  const Vertex v = order[pos];
  const unsigned n = cur.dim();
  enumerate_rec(order, pos + 1, cur, out);  // v excluded: always legal going down
  bool can_include = true;
  for (unsigned i = 0; i < n && can_include; ++i)
    if (!vertex_bit(v, i) && !cur.contains(v | (Vertex{1} << i))) can_include = false;
  if (can_include) {
    cur.insert(v);
    enumerate_rec(order, pos + 1, cur, out);
    cur.erase(v);
  }
}

}  // namespace

std::vector<CubeSet> enumerate_all_monotone(unsigned n) {
  require(n >= 1 && n <= 5, Err::ParamOutOfRange, "enumeration supported for n <= 5");
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<Vertex> order(total);
  for (Vertex v = 0; v < total; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [](Vertex a, Vertex b) {
    const unsigned wa = hamming_weight(a), wb = hamming_weight(b);
    return wa != wb ? wa > wb : a < b;
  });
  std::vector<CubeSet> out;
  CubeSet cur(n);
  enumerate_rec(order, 0, cur, out);
  return out;
}

std::vector<Vertex> minimal_members(const CubeSet& s) {
  std::vector<Vertex> out;
  const unsigned n = s.dim();
  for (Vertex v : s.members()) {
    bool minimal = true;
    for (unsigned i = 0; i < n && minimal; ++i)
      if (vertex_bit(v, i) && s.contains(v ^ (Vertex{1} << i))) minimal = false;
    if (minimal) out.push_back(v);
  }
  return out;
}

void write_mset(std::ostream& out, const CubeSet& s, bool with_minimal) {
  const unsigned n = s.dim();
  const std::uint64_t total = s.cube_size();
  out << "n=" << n << "\n";
  out << "hex=";
  const std::uint64_t digits = (total + 3) / 4;
  for (std::uint64_t j = 0; j < digits; ++j) {
    unsigned val = 0;
    for (unsigned k = 0; k < 4; ++k) {
      const std::uint64_t v = 4 * j + k;
      if (v < total && s.contains(static_cast<Vertex>(v))) val |= 1u << k;
    }
    out << "0123456789abcdef"[val];
  }
  out << "\n";
  if (with_minimal) {
    out << "minimal=";
    bool first = true;
    for (Vertex v : minimal_members(s)) {
      if (!first) out << ' ';
      out << to_bitstring(v, n);
      first = false;
    }
    out << "\n";
  }
}

CubeSet read_mset(std::istream& in) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)) && line.rfind("n=", 0) == 0, Err::Format,
          "mset: missing n= line");
  const unsigned n = static_cast<unsigned>(std::stoul(line.substr(2)));
  CubeSet s(n);
  require(static_cast<bool>(std::getline(in, line)) && line.rfind("hex=", 0) == 0, Err::Format,
          "mset: missing hex= line");
  const std::string hex = line.substr(4);
  const std::uint64_t total = s.cube_size();
  require(hex.size() == (total + 3) / 4, Err::Format, "mset: wrong mask length");
  for (std::uint64_t j = 0; j < hex.size(); ++j) {
    const char c = hex[j];
    unsigned val;
    if (c >= '0' && c <= '9')
      val = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f')
      val = static_cast<unsigned>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F')
      val = static_cast<unsigned>(c - 'A' + 10);
    else {
      fail(Err::Format, "mset: bad hex digit");
    }
    for (unsigned k = 0; k < 4; ++k) {
      const std::uint64_t v = 4 * j + k;
      if ((val >> k) & 1u) {
        require(v < total, Err::Format, "mset: mask bit beyond 2^n");
        s.insert(static_cast<Vertex>(v));
      }
    }
  }
  if (std::getline(in, line) && line.rfind("minimal=", 0) == 0) {
    std::istringstream iss(line.substr(8));
    std::string tok;
    while (iss >> tok) {
      Vertex v = from_bitstring(tok);
      require(s.contains(v), Err::Format, "mset: listed minimal element not in mask");
    }
  }
  return s;
}

void write_mset_file(const std::string& path, const CubeSet& s, bool with_minimal) {
  std::ofstream out(path);
  require(static_cast<bool>(out), Err::Format, "cannot open " + path);
  write_mset(out, s, with_minimal);
}

CubeSet read_mset_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), Err::Format, "cannot open " + path);
  return read_mset(in);
}

}  // namespace monocube
