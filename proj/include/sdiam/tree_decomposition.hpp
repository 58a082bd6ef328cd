#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "sdiam/graph.hpp"

namespace sdiam {

/// Tree decomposition with a per-bag apex set A(t) ⊆ β(t). Node ids are
/// 0-based in memory and 1-based in files.
struct TreeDecomposition {
  Vertex vertex_count = 0;
  std::vector<std::vector<Vertex>> bags;     // sorted
  std::vector<std::vector<Vertex>> apices;   // sorted, one list per bag
  std::vector<std::pair<int, int>> edges;

  std::size_t node_count() const { return bags.size(); }
  std::vector<std::vector<int>> adjacency() const;
  std::vector<Vertex> adhesion(int s, int t) const;
  std::size_t total_weight() const;  // sum of bag sizes
  std::size_t max_adhesion() const;
  std::size_t max_apices() const;
};

/// Extended PACE .td: "s td <bags> <max bag> <n>", "b <id> <v...>",
/// "a <id> <v...>" apex lines, "<i> <j>" tree edges, "c" comments.
/// Rejects malformed lines, out-of-range ids and edge sets that are not a tree.
TreeDecomposition parse_td(std::istream& in);
TreeDecomposition parse_td(const std::string& text);
TreeDecomposition load_td(const std::string& path);
void write_td(std::ostream& out, const TreeDecomposition& td);

struct TdReport {
  bool vertex_cover = true;     // every vertex in some bag
  bool trace_connected = true;  // bags containing v form a subtree
  bool edge_cover = true;       // every graph edge inside a bag
  bool apex_subset = true;      // A(t) ⊆ β(t)
  bool apex_bound = true;       // |A(t)| <= k
  bool adhesion_bound = true;   // |β(s) ∩ β(t)| <= k
  bool comparable_adjacent = false;  // informational: merge pass has work to do
  std::size_t max_adhesion = 0;
  std::size_t max_apices = 0;
  std::vector<std::string> failures;

  static constexpr const char* torso_genus = "UNCHECKED";
  bool ok() const {
    return vertex_cover && trace_connected && edge_cover && apex_subset && apex_bound && adhesion_bound;
  }
};

TdReport validate_td(const Graph& g, const TreeDecomposition& td, int k);

/// Contracts tree edges whose bags are comparable by inclusion until none
/// remain. The surviving node keeps the larger bag and the union of both apex
/// sets.
TreeDecomposition merge_comparable_bags(const TreeDecomposition& td);

}  // namespace sdiam
