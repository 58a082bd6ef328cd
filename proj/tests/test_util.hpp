#pragma once

#include <algorithm>
#include <vector>

#include "sdiam/graph.hpp"
#include "sdiam/oracle.hpp"

namespace sdiam::testing {

// Random connected graph: a random spanning tree plus extra random edges.
inline Graph random_connected(Rng& rng, Vertex n, std::size_t extra, Dist max_weight = 1) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v)
    edges.push_back({static_cast<Vertex>(rng.uniform(0, v - 1)), v, rng.uniform(1, max_weight)});
  for (std::size_t i = 0; i < extra && n > 1; ++i) {
    auto u = static_cast<Vertex>(rng.uniform(0, n - 1));
    auto v = static_cast<Vertex>(rng.uniform(0, n - 1));
    edges.push_back({u, v, rng.uniform(1, max_weight)});
  }
  return Graph::from_edges(n, std::move(edges));
}

inline Graph path_graph(Vertex n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 1});
  return Graph::from_edges(n, std::move(edges));
}

inline Graph grid_graph(Vertex side) {
  std::vector<Edge> edges;
  for (Vertex r = 0; r < side; ++r)
    for (Vertex c = 0; c < side; ++c) {
      Vertex v = r * side + c;
      if (c + 1 < side) edges.push_back({v, v + 1, 1});
      if (r + 1 < side) edges.push_back({v, v + side, 1});
    }
  return Graph::from_edges(side * side, std::move(edges));
}

inline std::vector<Dist> oracle_ecc(const Graph& g) {
  auto m = apsp_floyd_warshall(g);
  std::vector<Dist> ecc(static_cast<std::size_t>(g.n()), 0);
  for (Vertex u = 0; u < g.n(); ++u)
    for (Vertex v = 0; v < g.n(); ++v) ecc[u] = std::max(ecc[u], m.at(u, v));
  return ecc;
}

inline std::vector<Vertex> all_vertices(const Graph& g) {
  std::vector<Vertex> out(static_cast<std::size_t>(g.n()));
  for (Vertex v = 0; v < g.n(); ++v) out[v] = v;
  return out;
}

}  // namespace sdiam::testing
