#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sdiam/division.hpp"
#include "sdiam/graph.hpp"

namespace sdiam {

inline constexpr int kDefaultApexCap = 8;

struct EngineOptions {
  int threads = 1;
  int apex_cap = kDefaultApexCap;
  // false replaces every max-min index query by a scan over the profile group
  bool batch_queries = true;
};

struct EngineStats {
  std::size_t regions = 0;
  std::size_t boundary_sum = 0;
  std::size_t profile_count = 0;       // sum over regions of |P_R|
  std::size_t max_profile_count = 0;
  std::int64_t region_size = 0;        // r used to build the division, 0 if supplied
  double build_ms = 0;
  double query_ms = 0;
};

struct EccResult {
  std::vector<Dist> ecc;
  EngineStats stats;

  Dist diameter() const { return diameter_of(ecc); }
};

/// Distances from every apex in the full graph G.
struct ApexContext {
  std::vector<Vertex> apices;
  std::vector<std::vector<Dist>> rows;

  static ApexContext build(const Graph& g, std::span<const Vertex> apices, int threads = 1);
  std::size_t size() const { return apices.size(); }
};

/// All-pairs distances inside G[R] - A, as a |R| x |R| row-major matrix in
/// sorted region order. Paths leaving R are not considered.
std::vector<Dist> region_apsp(const Graph& g, std::span<const Vertex> apices, std::span<const Vertex> region);

/// X-eccentricity of every vertex of g from a division of G - A.
///
/// For u outside A with home region R: targets inside R are resolved by the
/// minimum over an apex detour, a detour through the boundary of R, and the
/// distance inside G[R]; targets outside R are grouped by their boundary
/// profile and each group answers max_v min(r_1 + d(a_1, v), ...,
/// r_{k+1} + d(s_R, v)) with one max-min index query. Targets that G - A
/// does not connect to R are reachable only through A and use an apex-only
/// index.
EccResult ecc_from_division(const Graph& g, std::span<const Vertex> apices,
                            std::span<const Vertex> targets, const RDivision& div,
                            const EngineOptions& options = {});
EccResult ecc_from_division(const Graph& g, std::span<const Vertex> apices, const RDivision& div,
                            const EngineOptions& options = {});

struct GenusApexParams {
  double rho = 2.0 / 25.0;
  std::int64_t r = 0;  // > 0 overrides max(4, ceil(n^rho))
  EngineOptions engine;
};

/// Builds a division of G - A with the configured region size and delegates
/// to ecc_from_division with X = V(G). Requires G and G - A connected and A a
/// strict subset of V within the apex cap.
EccResult ecc_genus_apex(const Graph& g, std::span<const Vertex> apices, const GenusApexParams& params = {});

}  // namespace sdiam
