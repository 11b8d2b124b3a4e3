#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <set>
#include <vector>

#include "arena/bigint.hpp"
#include "arena/error.hpp"

namespace arena {

struct Edge {
  int id;
  int u;
  int v;
};

// Undirected multigraph. Edge ids are dense in [0, |E|); parallel edges are
// allowed, self-loops are not.
class Graph {
 public:
  Graph(int node_count, std::vector<Edge> edges)
      : node_count_(node_count), edges_(std::move(edges)) {
    if (node_count_ <= 0) throw Error(errc::invalid_graph, "node_count must be positive");
    std::vector<bool> seen(edges_.size(), false);
    for (const Edge& e : edges_) {
      if (e.id < 0 || e.id >= static_cast<int>(edges_.size()) || seen[e.id])
        throw Error(errc::invalid_graph, "edge ids must be unique and dense in [0,|E|)");
      seen[e.id] = true;
      if (e.u < 0 || e.u >= node_count_ || e.v < 0 || e.v >= node_count_)
        throw Error(errc::invalid_graph, "edge endpoint out of range");
      if (e.u == e.v) throw Error(errc::invalid_graph, "self-loops are not allowed");
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return a.id < b.id; });
    adjacency_.resize(node_count_);
    for (const Edge& e : edges_) {
      adjacency_[e.u].push_back(e.id);
      adjacency_[e.v].push_back(e.id);
    }
  }

  int node_count() const { return node_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int id) const { return edges_[id]; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Incident edge ids in increasing id order.
  const std::vector<int>& incident(int node) const { return adjacency_[node]; }

  int other_endpoint(int edge_id, int node) const {
    const Edge& e = edges_[edge_id];
    return e.u == node ? e.v : e.u;
  }

 private:
  int node_count_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

// A walk given as an edge-id sequence. Paths are sets of edges for cost
// purposes, so edge-simplicity is part of validity.
struct Path {
  std::vector<int> edge_seq;
  int source = 0;
  int destination = 0;

  int length() const { return static_cast<int>(edge_seq.size()); }

  friend bool operator==(const Path& a, const Path& b) {
    return a.source == b.source && a.destination == b.destination &&
           a.edge_seq == b.edge_seq;
  }
};

// Deterministic path order: shorter first, then lexicographic edge sequence.
inline bool path_less(const Path& a, const Path& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a.edge_seq < b.edge_seq;
}

inline bool validate_path(const Graph& g, const Path& p) {
  if (p.source < 0 || p.source >= g.node_count()) return false;
  if (p.destination < 0 || p.destination >= g.node_count()) return false;
  if (p.edge_seq.empty()) return p.source == p.destination;
  std::set<int> used;
  int at = p.source;
  for (int id : p.edge_seq) {
    if (id < 0 || id >= g.edge_count()) return false;
    if (!used.insert(id).second) return false;  // edge-simple
    const Edge& e = g.edge(id);
    if (e.u == at)
      at = e.v;
    else if (e.v == at)
      at = e.u;
    else
      return false;
  }
  return at == p.destination;
}

// Every node-simple s-t path of length <= max_len, in lexicographic order
// of edge-id sequences (grouped implicitly by the DFS edge order).
inline std::vector<Path> all_simple_paths(const Graph& g, int s, int t, int max_len,
                                          std::size_t cap = 1000000) {
  if (s == t) throw Error(errc::precondition, "all_simple_paths requires s != t");
  if (max_len < 1) throw Error(errc::precondition, "max_len must be >= 1");
  std::vector<Path> out;
  std::vector<int> seq;
  std::vector<bool> visited(g.node_count(), false);
  visited[s] = true;

  auto dfs = [&](auto&& self, int at) -> void {
    if (at == t) {
      if (out.size() >= cap)
        throw Error(errc::result_too_large, "path enumeration exceeded cap");
      out.push_back(Path{seq, s, t});
      return;
    }
    if (static_cast<int>(seq.size()) >= max_len) return;
    for (int id : g.incident(at)) {
      int next = g.other_endpoint(id, at);
      if (visited[next]) continue;
      visited[next] = true;
      seq.push_back(id);
      self(self, next);
      seq.pop_back();
      visited[next] = false;
    }
  };
  dfs(dfs, s);
  std::sort(out.begin(), out.end(), [](const Path& a, const Path& b) {
    return a.edge_seq < b.edge_seq;
  });
  return out;
}

namespace detail {

// Label for length-layered shortest path: exact weight, then the edge
// sequence; length is the layer index. Layered DP keeps, per (node, length),
// the best label; appending an edge preserves strict label order, so
// per-layer bests suffice for the global (weight, length, lex) minimum.
struct PathLabel {
  BigInt weight;
  std::vector<int> seq;
};

inline bool label_less(const PathLabel& a, const PathLabel& b) {
  if (a.weight != b.weight) return a.weight < b.weight;
  return a.seq < b.seq;
}

// Minimizes (sum of weights, length, lex edge seq) over walks of length
// <= max_len whose edges all satisfy `usable`. With nonnegative weights the
// winner is node-simple: a repeated node admits a shortcut that is no worse
// in weight and strictly shorter.
inline std::optional<Path> min_weight_path_impl(
    const Graph& g, int s, int t, const std::vector<BigInt>& weight, int max_len,
    const std::vector<bool>* usable = nullptr) {
  std::vector<std::optional<PathLabel>> current(g.node_count());
  current[s] = PathLabel{0, {}};
  std::optional<PathLabel> best;
  int best_len = -1;
  if (s == t) return Path{{}, s, t};
  for (int layer = 1; layer <= max_len; ++layer) {
    std::vector<std::optional<PathLabel>> next(g.node_count());
    bool any = false;
    for (int node = 0; node < g.node_count(); ++node) {
      if (!current[node]) continue;
      for (int id : g.incident(node)) {
        if (usable && !(*usable)[id]) continue;
        int to = g.other_endpoint(id, node);
        PathLabel cand{current[node]->weight + weight[id], current[node]->seq};
        cand.seq.push_back(id);
        if (!next[to] || label_less(cand, *next[to])) {
          next[to] = std::move(cand);
          any = true;
        }
      }
    }
    current = std::move(next);
    if (current[t]) {
      // Earlier layers win ties on weight, so only a strictly better weight
      // (or equal weight at this same first layer) can replace `best`.
      const PathLabel& lbl = *current[t];
      if (!best || lbl.weight < best->weight) {
        best = lbl;
        best_len = layer;
      }
    }
    if (!any) break;
  }
  if (!best) return std::nullopt;
  return Path{best->seq, s, t};
}

}  // namespace detail

// Minimum-total-weight node-simple path; exact big-integer arithmetic.
// Ties: shorter length, then lexicographic edge sequence.
inline Path min_weight_path(const Graph& g, int s, int t,
                            const std::vector<BigInt>& weight, int max_len = -1) {
  if (s == t) throw Error(errc::precondition, "min_weight_path requires s != t");
  if (max_len < 0) max_len = g.node_count() - 1;
  auto p = detail::min_weight_path_impl(g, s, t, weight, max_len);
  if (!p) throw Error(errc::no_path, "destination unreachable");
  return *p;
}

// Minimum-bottleneck (min over paths of max edge load) node-simple path.
// Ties: smaller load sum, then shorter, then lexicographic. Implemented as a
// threshold search over distinct load values followed by a load-sum
// shortest-path restricted to edges under the threshold.
inline Path min_bottleneck_path(const Graph& g, int s, int t,
                                const std::vector<std::uint64_t>& load,
                                int max_len = -1) {
  if (s == t) throw Error(errc::precondition, "min_bottleneck_path requires s != t");
  if (max_len < 0) max_len = g.node_count() - 1;

  std::vector<std::uint64_t> thresholds(load.begin(), load.end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  auto reachable = [&](std::uint64_t cap) {
    std::vector<int> dist(g.node_count(), -1);
    std::queue<int> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int node = q.front();
      q.pop();
      if (node == t) return true;
      if (dist[node] >= max_len) continue;
      for (int id : g.incident(node)) {
        if (load[id] > cap) continue;
        int to = g.other_endpoint(id, node);
        if (dist[to] < 0) {
          dist[to] = dist[node] + 1;
          q.push(to);
        }
      }
    }
    return false;
  };

  std::uint64_t best_cap = 0;
  bool found = false;
  std::size_t lo = 0, hi = thresholds.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (reachable(thresholds[mid])) {
      best_cap = thresholds[mid];
      found = true;
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (!found) throw Error(errc::no_path, "destination unreachable");

  std::vector<bool> usable(load.size());
  std::vector<BigInt> weight(load.size());
  for (std::size_t i = 0; i < load.size(); ++i) {
    usable[i] = load[i] <= best_cap;
    weight[i] = load[i];
  }
  auto p = detail::min_weight_path_impl(g, s, t, weight, max_len, &usable);
  if (!p) throw Error(errc::internal_inconsistency, "threshold reachable but no path found");
  return *p;
}

}  // namespace arena
