#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kacss/errors.hpp"
#include "kacss/rational.hpp"

namespace kacss {

using VertexId = std::size_t;
using ArcId = std::size_t;

struct Arc {
  VertexId tail = 0;
  VertexId head = 0;
  Rational cost = 1;

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Directed multigraph with a connectivity requirement. Arcs are identified by
/// their position in `arcs`; parallel arcs are distinct.
struct Instance {
  std::size_t n = 0;
  std::vector<Arc> arcs;
  int k = 1;

  std::size_t num_arcs() const { return arcs.size(); }

  bool unit_costs() const {
    return std::all_of(arcs.begin(), arcs.end(), [](const Arc& a) { return a.cost == 1; });
  }

  /// Same vertices and costs, every arc flipped. Arc ids are preserved.
  Instance reversed() const {
    Instance out = *this;
    for (Arc& a : out.arcs) std::swap(a.tail, a.head);
    return out;
  }

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Sorted set of arc ids.
class ArcSet {
 public:
  ArcSet() = default;
  ArcSet(std::initializer_list<ArcId> ids) : ids_(ids) { normalize(); }
  explicit ArcSet(std::vector<ArcId> ids) : ids_(std::move(ids)) { normalize(); }

  static ArcSet all(std::size_t m) {
    ArcSet s;
    s.ids_.resize(m);
    for (ArcId a = 0; a < m; ++a) s.ids_[a] = a;
    return s;
  }

  static ArcSet from_mask(const std::vector<bool>& mask) {
    ArcSet s;
    for (ArcId a = 0; a < mask.size(); ++a)
      if (mask[a]) s.ids_.push_back(a);
    return s;
  }

  std::vector<bool> mask(std::size_t m) const {
    std::vector<bool> out(m, false);
    for (ArcId a : ids_) out[a] = true;
    return out;
  }

  bool contains(ArcId a) const { return std::binary_search(ids_.begin(), ids_.end(), a); }
  void insert(ArcId a) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), a);
    if (it == ids_.end() || *it != a) ids_.insert(it, a);
  }
  void erase(ArcId a) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), a);
    if (it != ids_.end() && *it == a) ids_.erase(it);
  }

  ArcSet united(const ArcSet& other) const {
    ArcSet out;
    std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                   std::back_inserter(out.ids_));
    return out;
  }

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }
  const std::vector<ArcId>& ids() const { return ids_; }

  Rational cost(const Instance& inst) const {
    Rational total = 0;
    for (ArcId a : ids_) total += inst.arcs[a].cost;
    return total;
  }

  friend bool operator==(const ArcSet&, const ArcSet&) = default;
  friend auto operator<=>(const ArcSet&, const ArcSet&) = default;

 private:
  void normalize() {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }

  std::vector<ArcId> ids_;
};

namespace detail {

inline std::uint64_t parse_count(const std::string& token, const std::string& what, int line) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("line " + std::to_string(line) + ": malformed " + what + " '" + token + "'");
  try {
    return std::stoull(token);
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": " + what + " out of range");
  }
}

}  // namespace detail

/// Reads the line-oriented `p kacss n m k` / `a tail head num/den` format.
inline Instance parse_instance(std::istream& in) {
  Instance inst;
  bool have_header = false;
  std::size_t expected_arcs = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag) || tag.front() == '#') continue;
    std::vector<std::string> fields;
    for (std::string f; ss >> f;) fields.push_back(f);
    auto fail = [&](const std::string& msg) -> ParseError {
      return ParseError("line " + std::to_string(lineno) + ": " + msg);
    };
    if (tag == "p") {
      if (have_header) throw fail("duplicate header");
      if (fields.size() != 4 || fields[0] != "kacss") throw fail("expected 'p kacss <n> <m> <k>'");
      inst.n = detail::parse_count(fields[1], "vertex count", lineno);
      expected_arcs = detail::parse_count(fields[2], "arc count", lineno);
      std::uint64_t k = detail::parse_count(fields[3], "k", lineno);
      if (k < 1 || k > 1'000'000) throw fail("k must be a positive integer");
      inst.k = static_cast<int>(k);
      have_header = true;
    } else if (tag == "a") {
      if (!have_header) throw fail("arc line before header");
      if (fields.size() != 3) throw fail("expected 'a <tail> <head> <num>/<den>'");
      Arc arc;
      arc.tail = detail::parse_count(fields[0], "tail", lineno);
      arc.head = detail::parse_count(fields[1], "head", lineno);
      if (arc.tail >= inst.n || arc.head >= inst.n) throw fail("vertex id out of range");
      if (arc.tail == arc.head) throw fail("self-loop");
      if (fields[2].find('/') == std::string::npos) throw fail("cost must be written num/den");
      try {
        arc.cost = parse_rational(fields[2]);
      } catch (const std::invalid_argument& e) {
        throw fail(e.what());
      }
      if (arc.cost < 0) throw fail("negative cost");
      inst.arcs.push_back(std::move(arc));
    } else {
      throw fail("unknown line tag '" + tag + "'");
    }
  }
  if (!have_header) throw ParseError("missing 'p kacss' header");
  if (inst.arcs.size() != expected_arcs)
    throw ParseError("header declares " + std::to_string(expected_arcs) + " arcs, found " +
                     std::to_string(inst.arcs.size()));
  return inst;
}

inline Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

inline void write_instance(std::ostream& out, const Instance& inst) {
  out << "p kacss " << inst.n << ' ' << inst.arcs.size() << ' ' << inst.k << '\n';
  for (const Arc& a : inst.arcs) out << "a " << a.tail << ' ' << a.head << ' ' << to_string(a.cost) << '\n';
}

inline std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return out.str();
}

/// One arc id per line, ascending.
inline ArcSet parse_arc_set(std::istream& in, std::size_t num_arcs) {
  std::vector<ArcId> ids;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string token;
    if (!(ss >> token) || token.front() == '#') continue;
    ArcId a = detail::parse_count(token, "arc id", lineno);
    if (a >= num_arcs) throw ParseError("line " + std::to_string(lineno) + ": arc id out of range");
    if (!ids.empty() && a <= ids.back())
      throw ParseError("line " + std::to_string(lineno) + ": arc ids must be strictly ascending");
    ids.push_back(a);
  }
  return ArcSet(std::move(ids));
}

inline void write_arc_set(std::ostream& out, const ArcSet& arcs) {
  for (ArcId a : arcs) out << a << '\n';
}

/// Uniform integer in [0, bound) by rejection; the stdlib distributions are
/// implementation-defined and would break cross-platform reproducibility.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    std::uint64_t v = rng();
    if (v < limit) return v % bound;
  }
}

/// Union of k pairwise arc-disjoint random Hamiltonian cycles plus `extra`
/// further random arcs, all of unit cost. For n = 2 the cycles are necessarily
/// parallel copies of the 2-cycle.
inline Instance random_k_connected(std::size_t n, int k, std::size_t extra, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_k_connected: need n >= 2");
  if (k < 1) throw std::invalid_argument("random_k_connected: need k >= 1");
  if (n > 2 && static_cast<std::size_t>(k) > n - 1)
    throw std::invalid_argument("random_k_connected: need k <= n - 1");

  constexpr int kMaxAttempts = 1000;
  std::mt19937_64 rng(seed);
  Instance inst;
  inst.n = n;
  inst.k = k;
  std::set<std::pair<VertexId, VertexId>> used;

  std::vector<VertexId> perm(n);
  for (int c = 0; c < k; ++c) {
    bool placed = false;
    for (int attempt = 0; attempt < kMaxAttempts && !placed; ++attempt) {
      for (VertexId v = 0; v < n; ++v) perm[v] = v;
      for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[uniform_below(rng, i + 1)]);
      std::vector<std::pair<VertexId, VertexId>> cycle;
      for (std::size_t i = 0; i < n; ++i) cycle.emplace_back(perm[i], perm[(i + 1) % n]);
      if (n > 2 && std::any_of(cycle.begin(), cycle.end(), [&](const auto& e) { return used.count(e) > 0; }))
        continue;
      for (const auto& [u, v] : cycle) {
        used.emplace(u, v);
        inst.arcs.push_back(Arc{u, v, 1});
      }
      placed = true;
    }
    if (!placed)
      throw std::runtime_error("random_k_connected: could not pack " + std::to_string(k) +
                               " arc-disjoint Hamiltonian cycles");
  }

  if (extra > n * (n - 1) - used.size())
    throw std::invalid_argument("random_k_connected: too many extra arcs for a simple digraph");
  for (std::size_t e = 0; e < extra; ++e) {
    for (;;) {
      VertexId u = uniform_below(rng, n);
      VertexId v = uniform_below(rng, n);
      if (u == v || used.count({u, v})) continue;
      used.emplace(u, v);
      inst.arcs.push_back(Arc{u, v, 1});
      break;
    }
  }
  return inst;
}

}  // namespace kacss
