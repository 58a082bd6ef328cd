#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sdiam/ecc_engine.hpp"
#include "sdiam/graph.hpp"
#include "sdiam/tree_decomposition.hpp"

namespace sdiam {

/// Disjoint A, B, C covering V with no edge between A and C.
struct PartitionABC {
  std::vector<Vertex> a;
  std::vector<Vertex> b;
  std::vector<Vertex> c;
};

struct SideMaxima {
  std::vector<Dist> a_to_c;  // per vertex of part.a: max over c of dist(a, c)
  std::vector<Dist> c_to_a;  // per vertex of part.c: max over a of dist(c, a)
};

/// Distances across the separator B via |B| searches and one max-min index
/// per side. Throws kEmptySide when A or C is empty.
SideMaxima single_adhesion_max_dist(const Graph& g, const PartitionABC& part, int threads = 1);

/// G[A ∪ B] plus an edge u-v for every u, v in B joined by a path whose
/// interior lies in C, weighted by the shortest such path. Vertex i of the
/// result is kept[i] of g.
struct ShortcutGraph {
  Graph graph;
  std::vector<Vertex> kept;      // sorted A ∪ B
  std::size_t shortcuts = 0;
};

ShortcutGraph shortcut_through(const Graph& g, const PartitionABC& part);

/// Bottom-up marking over a rooted decomposition: the edge from t to its
/// parent is heavy when the unmarked weight below t (t included) reaches the
/// threshold, and then that weight is marked.
struct HeavyLightSplit {
  int root = 0;
  std::vector<int> parent;                  // -1 at the root
  std::vector<int> order;                   // BFS order from the root
  std::vector<std::uint8_t> heavy;          // heavy[t]: edge t-parent(t) is heavy
  std::vector<int> subtree_of;              // node -> index into tops
  std::vector<int> tops;                    // top node of each subtree
  std::vector<std::size_t> subtree_weight;  // sum of bag sizes per subtree
  std::vector<std::pair<int, int>> heavy_edges;  // (parent, child)
};

HeavyLightSplit heavy_light_split(const TreeDecomposition& td, int root, double threshold);
HeavyLightSplit heavy_light_split(const TreeDecomposition& td, int root, std::int64_t n, double delta);

/// Root choice: largest bag, smallest id on ties.
int default_root(const TreeDecomposition& td);

struct AdhesionReduction {
  std::vector<std::vector<Vertex>> adhesions;  // shrunk, sorted
  std::vector<Vertex> removed;                 // M, sorted
  std::size_t rounds = 0;
};

/// While some adhesion has more than 4 vertices, moves its 5 smallest ids
/// into M and deletes them from every adhesion.
AdhesionReduction reduce_adhesions(std::vector<std::vector<Vertex>> adhesions);

struct StarParams {
  double delta = 1.0 / 356.0;
  std::int64_t n = 0;                  // size parameter of the thresholds; 0 means |V(g)|
  double satellite_threshold = -1;     // >= 0 overrides n^delta'
  std::int64_t r = 0;                  // > 0 overrides max(4, ceil(n^rho'))
  std::int64_t subdivision_factor = 64;
  EngineOptions engine;
};

struct StarStats {
  std::size_t satellites = 0;
  std::size_t heavy_satellites = 0;
  std::size_t extra_apices = 0;        // |M|
  std::size_t subdivided_vertices = 0;
  std::int64_t region_size = 0;
  EngineStats engine;
};

struct StarResult {
  std::vector<Dist> ecc;
  StarStats stats;
};

/// Eccentricities of a star-shaped graph: apices A, a centre V_0 and
/// satellites V_1..V_l that meet V_0 in small adhesions and meet each other
/// only inside V_0.
StarResult star_ecc(const Graph& g, std::span<const Vertex> apices,
                    const std::vector<std::vector<Vertex>>& parts, const StarParams& params = {});

struct CliqueSumParams {
  int k = -1;                          // < 0: taken from the decomposition
  double delta = 1.0 / 356.0;
  double Delta = 355.0 / 356.0;
  std::int64_t naive_threshold = 512;  // < 0: use n^Delta
  double heavy_threshold = -1;         // >= 0 overrides n^delta
  StarParams star;
  EngineOptions engine;
};

struct CliqueSumStats {
  std::size_t bags = 0;                // after merging comparable bags
  std::size_t heavy_edges = 0;
  std::size_t subtrees = 0;
  std::size_t naive_subtrees = 0;
  std::size_t star_subtrees = 0;
  std::size_t shortcut_edges = 0;
  EngineStats engine;
};

struct CliqueSumResult {
  std::vector<Dist> ecc;
  CliqueSumStats stats;
  Dist diameter() const { return diameter_of(ecc); }
};

CliqueSumResult ecc_cliquesum(const Graph& g, const TreeDecomposition& td, const CliqueSumParams& params = {});

}  // namespace sdiam
