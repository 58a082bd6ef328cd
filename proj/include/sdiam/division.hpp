#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sdiam/graph.hpp"

namespace sdiam {

/// A cover of the non-excluded vertices by connected regions.
///
/// boundary[i] is R_i ∩ N(V' \ R_i) where V' is the divided vertex set (all
/// vertices minus the excluded ones, i.e. G - A). Regions and boundaries are
/// sorted by vertex id.
struct RDivision {
  std::vector<std::vector<Vertex>> regions;
  std::vector<std::vector<Vertex>> boundary;
  std::vector<Vertex> pivot;        // smallest boundary vertex, else smallest region vertex
  std::vector<std::int32_t> home;   // lowest-index region containing v, -1 if none
  std::vector<std::uint8_t> excluded;

  std::size_t region_count() const { return regions.size(); }
  std::size_t boundary_sum() const;
  std::size_t max_region_size() const;

  /// Derives boundary, pivot and home_region from the region lists.
  static RDivision from_regions(const Graph& g, std::vector<std::vector<Vertex>> regions,
                                std::span<const Vertex> excluded = {});
};

/// Recursive BFS-level separator division of G - excluded into connected
/// regions of at most r vertices. Components of G - excluded are divided
/// independently.
RDivision build_r_division(const Graph& g, std::int64_t r, std::span<const Vertex> excluded = {});

/// max(4, ceil(n^rho)).
std::int64_t default_region_size(std::int64_t n, double rho);

struct DivisionReport {
  bool cover = true;         // every non-excluded vertex lies in a region, no excluded one does
  bool size = true;          // |R| <= r
  bool connectivity = true;  // G[R] connected for every region
  bool boundary = true;      // stored boundary equals R ∩ N(V' \ R)
  bool home = true;          // home_region contains the vertex
  std::size_t boundary_sum = 0;
  std::size_t max_region = 0;
  std::size_t regions = 0;
  std::vector<std::string> failures;

  bool ok() const { return cover && size && connectivity && boundary && home; }
};

/// r <= 0 skips the size check.
DivisionReport validate_division(const Graph& g, const RDivision& div, std::int64_t r);

/// One region per line, space separated 1-based ids, "c" comments. Loading does
/// not validate: oversized or overlapping regions are accepted and only the
/// validator rejects them.
std::vector<std::vector<Vertex>> parse_division(std::istream& in, Vertex n);
RDivision load_division(const Graph& g, std::istream& in, std::span<const Vertex> excluded = {});
RDivision load_division(const Graph& g, const std::string& path, std::span<const Vertex> excluded = {});
void write_division(std::ostream& out, const RDivision& div);

}  // namespace sdiam
