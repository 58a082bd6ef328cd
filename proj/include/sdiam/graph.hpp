#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sdiam {

using Vertex = std::int32_t;
using Dist = std::int64_t;

inline constexpr Dist kUnreachable = std::numeric_limits<Dist>::max();

struct Edge {
  Vertex u;
  Vertex v;
  Dist w = 1;
};

/// Immutable undirected graph in CSR form with positive integer edge weights.
///
/// Construction normalises the edge list: self-loops are dropped and parallel
/// edges are merged keeping the minimum weight. A graph whose weights are all
/// 1 reports weighted() == false and is searched with BFS.
class Graph {
 public:
  Graph() = default;

  static Graph from_edges(Vertex n, std::vector<Edge> edges);

  Vertex n() const { return n_; }
  std::size_t edge_count() const { return targets_.size() / 2; }
  bool weighted() const { return weighted_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::span<const Dist> weights(Vertex v) const {
    return {weights_.data() + offsets_[v], weights_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  // Each undirected edge once, with u < v, sorted.
  std::vector<Edge> edges() const;
  Dist total_weight() const;

 private:
  Vertex n_ = 0;
  bool weighted_ = false;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> targets_;
  std::vector<Dist> weights_;
};

/// Distances from a source vertex or vertex set. Unreached vertices hold
/// kUnreachable.
struct DistVector {
  std::vector<Vertex> sources;
  std::vector<Dist> dist;

  Dist operator[](Vertex v) const { return dist[v]; }
  std::size_t size() const { return dist.size(); }
};

/// Optional restriction of a search. A vertex may be reached only if enter[v]
/// is set, and edges are relaxed out of it only if expand[v] is set. Sources
/// are always entered and expanded. Empty spans mean "no restriction".
struct SearchFilter {
  std::span<const std::uint8_t> enter;
  std::span<const std::uint8_t> expand;
};

DistVector sssp(const Graph& g, Vertex source);
DistVector sssp_to_set(const Graph& g, std::span<const Vertex> sources);
DistVector shortest_paths(const Graph& g, std::span<const Vertex> sources,
                          const SearchFilter& filter);

/// ecc_X(v) = max_{x in X} dist(v, x) for every vertex v, by one search per
/// vertex. Throws kDisconnected when some pair is unreachable.
std::vector<Dist> naive_ecc(const Graph& g, std::span<const Vertex> targets,
                            int threads = 1);
std::vector<Dist> naive_ecc(const Graph& g, int threads = 1);

Dist diameter_of(std::span<const Dist> ecc);

bool is_connected(const Graph& g);
/// Connectivity of the subgraph induced by vertices with keep[v] set.
bool is_connected(const Graph& g, std::span<const std::uint8_t> keep);

std::vector<std::uint8_t> make_mask(Vertex n, std::span<const Vertex> members);

/// Subgraph induced on a vertex list; local id i corresponds to to_global[i].
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_global;
  std::vector<Vertex> to_local;  // -1 for vertices outside
};

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep);

// PACE-style text: "p tw <n> <m>", "c" comments, "<u> <v> [w]" 1-based.
Graph parse_graph(std::istream& in);
Graph parse_graph(std::string_view text);
Graph load_graph(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);

std::vector<Vertex> parse_vertex_list(std::istream& in, Vertex n);
std::vector<Vertex> load_vertex_list(const std::string& path, Vertex n);

}  // namespace sdiam
