#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arena/error.hpp"
#include "arena/game.hpp"
#include "arena/prng.hpp"

namespace arena {

// k players from u to v; one direct edge e = (u,v) plus k-1 node-disjoint
// u-v paths of exactly k edges each. Every player's strategy set is the
// direct edge plus all long paths. |E| = 1 + k(k-1).
inline Instance gen_linear_counterexample(int k, CostModel model) {
  if (k < 2) throw Error(errc::precondition, "counterexample requires k >= 2");
  const int u = 0, v = 1;
  int next_node = 2;
  std::vector<Edge> edges;
  edges.push_back(Edge{0, u, v});
  int next_edge = 1;
  std::vector<Path> routes;
  routes.push_back(Path{{0}, u, v});
  for (int route = 0; route < k - 1; ++route) {
    std::vector<int> seq;
    int at = u;
    for (int hop = 0; hop < k; ++hop) {
      int to = (hop == k - 1) ? v : next_node++;
      edges.push_back(Edge{next_edge, at, to});
      seq.push_back(next_edge);
      ++next_edge;
      at = to;
    }
    routes.push_back(Path{seq, u, v});
  }
  Graph g(next_node, std::move(edges));
  std::vector<Player> players;
  for (int i = 0; i < k; ++i)
    players.push_back(Player{i, u, v, ExplicitPaths{routes}});
  return Instance(std::move(g), std::move(players), model);
}

// Two nodes joined by `links` parallel edges; every player routes u -> v
// over any single edge.
inline Instance gen_parallel_links(int player_count, int links, CostModel model) {
  if (player_count < 1 || links < 1)
    throw Error(errc::precondition, "need at least one player and one link");
  std::vector<Edge> edges;
  std::vector<Path> routes;
  for (int i = 0; i < links; ++i) {
    edges.push_back(Edge{i, 0, 1});
    routes.push_back(Path{{i}, 0, 1});
  }
  Graph g(2, std::move(edges));
  std::vector<Player> players;
  for (int i = 0; i < player_count; ++i)
    players.push_back(Player{i, 0, 1, ExplicitPaths{routes}});
  return Instance(std::move(g), std::move(players), model);
}

namespace detail {

inline std::vector<Player> seeded_players(const Graph& g, int player_count, int max_len,
                                          Prng& rng) {
  std::vector<Player> players;
  std::vector<BigInt> unit(g.edge_count(), 1);
  for (int i = 0; i < player_count; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < 1000; ++attempt) {
      int s = static_cast<int>(rng.below(g.node_count()));
      int t = static_cast<int>(rng.below(g.node_count()));
      if (s == t) continue;
      if (!min_weight_path_impl(g, s, t, unit, max_len)) continue;
      players.push_back(Player{i, s, t, AllPaths{max_len}});
      placed = true;
      break;
    }
    if (!placed)
      throw Error(errc::rejection_failure, "could not place player within draw budget");
  }
  return players;
}

}  // namespace detail

// rows x cols grid; players between seeded random distinct connected pairs
// with AllPaths(rows + cols + 4).
inline Instance gen_random_grid(int rows, int cols, int player_count, std::uint64_t seed,
                                CostModel model) {
  if (rows < 1 || cols < 1 || rows * cols < 2 || player_count < 1)
    throw Error(errc::precondition, "grid parameters must be positive with >= 2 nodes");
  auto node = [&](int r, int c) { return r * cols + c; };
  std::vector<Edge> edges;
  int next_edge = 0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back(Edge{next_edge++, node(r, c), node(r, c + 1)});
      if (r + 1 < rows) edges.push_back(Edge{next_edge++, node(r, c), node(r + 1, c)});
    }
  Graph g(rows * cols, std::move(edges));
  Prng rng = Prng(seed).split(1);
  auto players = detail::seeded_players(g, player_count, rows + cols + 4, rng);
  return Instance(std::move(g), std::move(players), model);
}

// Connected seeded multigraph: a random spanning tree plus random extra
// edges (parallels permitted, self-loops redrawn).
inline Instance gen_random_graph(int nodes, int edge_count, int player_count,
                                 std::uint64_t seed, CostModel model) {
  if (nodes < 2 || edge_count < nodes - 1 || player_count < 1)
    throw Error(errc::precondition,
                "random graph needs >= 2 nodes and enough edges to connect them");
  Prng rng = Prng(seed).split(2);
  std::vector<Edge> edges;
  int next_edge = 0;
  for (int n = 1; n < nodes; ++n) {
    int anchor = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    edges.push_back(Edge{next_edge++, anchor, n});
  }
  int attempts = 0;
  while (next_edge < edge_count) {
    if (++attempts > 100 * edge_count)
      throw Error(errc::rejection_failure, "could not draw requested edge count");
    int a = static_cast<int>(rng.below(nodes));
    int b = static_cast<int>(rng.below(nodes));
    if (a == b) continue;
    edges.push_back(Edge{next_edge++, a, b});
  }
  Graph g(nodes, std::move(edges));
  auto players = detail::seeded_players(g, player_count, nodes - 1, rng);
  return Instance(std::move(g), std::move(players), model);
}

}  // namespace arena
