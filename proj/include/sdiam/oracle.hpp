#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sdiam/graph.hpp"
#include "sdiam/range_index.hpp"
#include "sdiam/tree_decomposition.hpp"

namespace sdiam {

inline constexpr Vertex kDefaultOracleCap = 3000;

struct DistanceMatrix {
  Vertex n = 0;
  std::vector<Dist> data;

  Dist at(Vertex u, Vertex v) const { return data[static_cast<std::size_t>(u) * n + v]; }
  bool operator==(const DistanceMatrix&) const = default;
};

/// One search per vertex.
DistanceMatrix apsp_naive(const Graph& g, Vertex cap = kDefaultOracleCap);
DistanceMatrix apsp_floyd_warshall(const Graph& g, Vertex cap = kDefaultOracleCap);

std::optional<Coord> rangequery_naive(const WeightedPointSet& points, std::span<const Coord> lower);
std::optional<Coord> maxmin_naive(int dim, std::span<const Coord> points, std::span<const Coord> shifts);

/// mt19937_64 with rejection-sampled integer ranges, so a seed produces the
/// same stream on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // uniform in [lo, hi]
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  // true with probability p
  bool chance(double p) { return static_cast<double>(next() >> 11) * 0x1.0p-53 < p; }
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i)
      std::swap(items[i - 1], items[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(i) - 1))]);
  }

 private:
  std::mt19937_64 engine_;
};

enum class InstanceKind {
  kPath,
  kCycle,
  kGrid,
  kRandomPlanarMesh,
  kGridPlusApices,
  kProfileGadget,
  kCliquesumChain,
  kStarGlue,
};

InstanceKind parse_instance_kind(std::string_view name);
const char* to_string(InstanceKind kind);

struct GenOptions {
  int k = 2;            // apices for grid_plus_apices, anchors for profile_gadget
  Dist ell = 8;         // profile_gadget path length
  Dist max_weight = 1;  // edge weights drawn from [1, max_weight]
};

struct Instance {
  std::string name;
  Graph graph;
  std::vector<Vertex> apices;
  std::optional<TreeDecomposition> td;
  int k = 0;  // bound the decomposition satisfies, 0 without one
};

/// size means: vertices for path, cycle and random_planar_mesh; the side for
/// grid, grid_plus_apices and star_glue (core side); the number of pieces for
/// cliquesum_chain. profile_gadget ignores it and reads k and ell.
Instance gen_instance(InstanceKind kind, std::uint64_t seed, std::int64_t size, const GenOptions& opts = {});

}  // namespace sdiam
