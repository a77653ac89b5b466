#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

#include "kacss/errors.hpp"
#include "kacss/graph.hpp"
#include "kacss/rational.hpp"

namespace kacss {

/// A vertex set U together with the capacity of the arcs leaving it.
template <class Cap>
struct BasicCutCertificate {
  std::vector<VertexId> side;  // U, ascending
  Cap value{};
};

using CutCertificate = BasicCutCertificate<Rational>;

template <class Cap>
struct FlowResult {
  Cap value{};
  BasicCutCertificate<Cap> cut;
};

namespace detail {

// Dinic's blocking-flow algorithm on a residual graph with paired edges.
template <class Cap>
class Dinic {
 public:
  explicit Dinic(std::size_t n) : adj_(n), level_(n), next_(n) {}

  void add_edge(std::size_t u, std::size_t v, const Cap& cap) {
    adj_[u].push_back(edges_.size());
    edges_.push_back({v, cap});
    adj_[v].push_back(edges_.size());
    edges_.push_back({u, Cap{0}});
  }

  // Stops early once `limit` units have been routed, when given.
  Cap run(std::size_t s, std::size_t t, const std::optional<Cap>& limit = std::nullopt) {
    Cap total{0};
    while (bfs(s, t)) {
      std::fill(next_.begin(), next_.end(), 0);
      for (;;) {
        std::optional<Cap> want;
        if (limit) {
          if (total >= *limit) return total;
          want = *limit - total;
        }
        Cap pushed = dfs(s, t, want);
        if (pushed == 0) break;
        total += pushed;
      }
    }
    return total;
  }

  // Vertices reachable from s in the residual graph.
  std::vector<bool> reachable(std::size_t s) const {
    std::vector<bool> seen(adj_.size(), false);
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t e : adj_[u]) {
        const Edge& edge = edges_[e];
        if (edge.cap > 0 && !seen[edge.to]) {
          seen[edge.to] = true;
          stack.push_back(edge.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Edge {
    std::size_t to;
    Cap cap;
  };

  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> queue;
    level_[s] = 0;
    queue.push(s);
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop();
      for (std::size_t e : adj_[u]) {
        const Edge& edge = edges_[e];
        if (edge.cap > 0 && level_[edge.to] < 0) {
          level_[edge.to] = level_[u] + 1;
          queue.push(edge.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  // Iterative augmenting-path search inside the level graph.
  Cap dfs(std::size_t s, std::size_t t, const std::optional<Cap>& want) {
    std::vector<std::size_t> path;  // edge ids
    std::size_t u = s;
    for (;;) {
      if (u == t) {
        Cap bottleneck = edges_[path.front()].cap;
        for (std::size_t e : path) bottleneck = std::min<Cap>(bottleneck, edges_[e].cap);
        if (want && *want < bottleneck) bottleneck = *want;
        for (std::size_t e : path) {
          edges_[e].cap -= bottleneck;
          edges_[e ^ 1].cap += bottleneck;
        }
        return bottleneck;
      }
      bool advanced = false;
      for (; next_[u] < adj_[u].size(); ++next_[u]) {
        std::size_t e = adj_[u][next_[u]];
        const Edge& edge = edges_[e];
        if (edge.cap > 0 && level_[edge.to] == level_[u] + 1) {
          path.push_back(e);
          u = edge.to;
          advanced = true;
          break;
        }
      }
      if (advanced) continue;
      if (u == s) return Cap{0};
      // Dead end: retreat and skip the edge that led here.
      level_[u] = -1;
      std::size_t e = path.back();
      path.pop_back();
      u = edges_[e ^ 1].to;
      ++next_[u];
    }
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

}  // namespace detail

/// Capacity of the arcs leaving `side`.
template <class Cap>
Cap cut_value(const Instance& inst, std::span<const Cap> cap, const std::vector<bool>& in_side) {
  Cap total{0};
  for (ArcId a = 0; a < inst.arcs.size(); ++a)
    if (in_side[inst.arcs[a].tail] && !in_side[inst.arcs[a].head]) total += cap[a];
  return total;
}

/// Maximum s-t flow together with the canonical minimum cut (vertices
/// reachable from s in the final residual graph).
template <class Cap>
FlowResult<Cap> max_flow(const Instance& inst, std::span<const Cap> cap, VertexId s, VertexId t) {
  if (s == t) throw std::invalid_argument("max_flow: source equals sink");
  if (cap.size() != inst.arcs.size()) throw std::invalid_argument("max_flow: capacity length mismatch");
  detail::Dinic<Cap> dinic(inst.n);
  for (ArcId a = 0; a < inst.arcs.size(); ++a) {
    if (cap[a] < 0) throw std::invalid_argument("max_flow: negative capacity");
    if (cap[a] > 0) dinic.add_edge(inst.arcs[a].tail, inst.arcs[a].head, cap[a]);
  }
  FlowResult<Cap> result;
  result.value = dinic.run(s, t);
  std::vector<bool> side = dinic.reachable(s);
  for (VertexId v = 0; v < inst.n; ++v)
    if (side[v]) result.cut.side.push_back(v);
  result.cut.value = cut_value(inst, cap, side);
  if (result.cut.value != result.value) throw InternalError("max_flow: flow value differs from cut value");
  return result;
}

inline FlowResult<Rational> max_flow(const Instance& inst, const std::vector<Rational>& cap, VertexId s,
                                     VertexId t) {
  return max_flow<Rational>(inst, std::span<const Rational>(cap), s, t);
}

namespace detail {

// Unit-capacity flow restricted to `arcs`, stopping once `limit` is reached.
inline long unit_flow(const Instance& inst, const std::vector<bool>& in_set, VertexId s, VertexId t,
                      long limit) {
  Dinic<long> dinic(inst.n);
  for (ArcId a = 0; a < inst.arcs.size(); ++a)
    if (in_set[a]) dinic.add_edge(inst.arcs[a].tail, inst.arcs[a].head, 1);
  return dinic.run(s, t, limit);
}

}  // namespace detail

/// Every nonempty proper vertex set has at least k arcs of `arcs` leaving it.
/// Checked as k arc-disjoint paths from vertex 0 to every vertex and back.
inline bool is_k_arc_connected(const Instance& inst, const ArcSet& arcs, int k) {
  if (k <= 0 || inst.n <= 1) return true;
  std::vector<bool> in_set = arcs.mask(inst.arcs.size());
  for (VertexId v = 1; v < inst.n; ++v) {
    if (detail::unit_flow(inst, in_set, 0, v, k) < k) return false;
    if (detail::unit_flow(inst, in_set, v, 0, k) < k) return false;
  }
  return true;
}

inline bool is_k_arc_connected(const Instance& inst, int k) {
  return is_k_arc_connected(inst, ArcSet::all(inst.arcs.size()), k);
}

/// Which flow problems the separation routine solves.
enum class CutFamily {
  kAll,         // every nonempty proper U: root -> v and v -> root flows
  kRootLeaving  // U containing the root only: root -> v flows
};

/// Separation for x(δ⁺(U)) >= k. Among the minimum cuts of the flow problems
/// between the root and each other vertex, returns the smallest one whose
/// value is below k (first found on ties), or nothing if x satisfies every
/// constraint of the family.
inline std::optional<CutCertificate> min_violated_cut(const Instance& inst, const std::vector<Rational>& x,
                                                      VertexId root, int k,
                                                      CutFamily family = CutFamily::kAll) {
  std::optional<CutCertificate> best;
  const Rational bound = k;
  auto consider = [&](CutCertificate cut) {
    if (cut.value < bound && (!best || cut.value < best->value)) best = std::move(cut);
  };
  for (VertexId v = 0; v < inst.n; ++v) {
    if (v == root) continue;
    consider(max_flow(inst, x, root, v).cut);
    if (family == CutFamily::kAll) consider(max_flow(inst, x, v, root).cut);
  }
  return best;
}

}  // namespace kacss
