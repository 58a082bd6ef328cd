#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sdiam/division.hpp"
#include "sdiam/graph.hpp"

namespace sdiam {

/// Distance rows from an anchor set (a region boundary, or any vertex set)
/// in G - excluded. anchors are in canonical (sorted by id) order and
/// rows[i][v] = dist(anchors[i], v).
struct AnchorDistances {
  std::vector<Vertex> anchors;
  std::size_t pivot_index = 0;
  std::vector<std::vector<Dist>> rows;

  Vertex pivot() const { return anchors[pivot_index]; }
  std::size_t width() const { return anchors.size(); }
  bool reaches(Vertex v) const { return !rows.empty() && rows[pivot_index][v] != kUnreachable; }
};

AnchorDistances anchor_distances(const Graph& g, std::vector<Vertex> anchors, Vertex pivot,
                                 std::span<const std::uint8_t> excluded = {}, int threads = 1);

/// One AnchorDistances per region of `div`, anchored at the region boundary
/// with the division's pivot, measured in G - apices. Regions with an empty
/// boundary get an empty entry.
std::vector<AnchorDistances> boundary_distances(const Graph& g, std::span<const Vertex> apices,
                                                const RDivision& div, int threads = 1);

/// p[u](s) = dist(u, s) - dist(u, pivot) for every anchor s in canonical
/// order. Vertices the anchors do not reach get an all-kUnreachable vector.
struct DistanceProfile {
  std::int32_t region = -1;
  std::vector<Dist> values;

  friend bool operator==(const DistanceProfile&, const DistanceProfile&) = default;
};

DistanceProfile profile_of(Vertex v, const AnchorDistances& ad, std::int32_t region = -1);

struct ProfileGroup {
  std::vector<Dist> profile;
  std::vector<Vertex> members;  // ascending
};

/// Partition of a vertex list by exact profile equality, groups ordered
/// lexicographically by profile vector.
struct ProfileTable {
  std::vector<ProfileGroup> groups;

  std::size_t size() const { return groups.size(); }
  /// histogram[s] = number of groups with s members (s >= 1).
  std::vector<std::size_t> size_histogram() const;
};

ProfileTable group_by_profile(std::span<const Vertex> vertices, const AnchorDistances& ad);

/// Lower-bound construction: a path R of length ell with k equidistant anchors
/// v_1..v_k (spacing p = floor(ell / (k - 1))), and for every vector a with
/// a_1 = ell and a_i in {ell, ..., ell + p} a vertex u(a) joined to each v_i
/// by a path of length a_i.
struct ProfileGadget {
  Graph graph;
  int k = 0;
  Dist ell = 0;
  Dist spacing = 0;
  std::vector<Vertex> r_path;                 // ell + 1 vertices in path order
  std::vector<Vertex> anchors;                // v_1..v_k
  std::vector<Vertex> gadget_vertices;        // u(a)
  std::vector<std::vector<Dist>> vectors;     // a for each gadget vertex
};

ProfileGadget gen_profile_gadget(int k, Dist ell, std::size_t max_vertices = 4'000'000);

/// A shortest path from `start` to the set `region` (smallest-id parent
/// tie-break), the profile of each path vertex on `region` relative to the
/// path's endpoint x, and the milestones: x and every vertex whose profile
/// differs from its successor's.
struct MilestoneTrace {
  std::vector<Vertex> region;                 // sorted
  std::vector<Vertex> path;                   // start ... x
  std::vector<std::vector<Dist>> profiles;    // per path vertex, indexed like region
  std::vector<Vertex> milestones;             // in path order
  std::vector<std::vector<Dist>> region_rows; // dist(region[i], .) in G

  Vertex endpoint() const { return path.back(); }
};

MilestoneTrace milestones(const Graph& g, std::span<const Vertex> region, Vertex start);

}  // namespace sdiam
