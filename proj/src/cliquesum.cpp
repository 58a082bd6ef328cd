#include "sdiam/cliquesum.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "sdiam/division.hpp"
#include "sdiam/error.hpp"
#include "sdiam/parallel.hpp"
#include "sdiam/range_index.hpp"

namespace sdiam {

namespace {

std::vector<Vertex> sorted_unique(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void check_range(const Graph& g, std::span<const Vertex> vs, const char* what) {
  for (Vertex v : vs)
    if (v < 0 || v >= g.n()) throw Error(ErrorKind::kPrecondition, std::string(what) + ": vertex id out of range");
}

// Shortest u-v lengths over paths whose interior avoids everything but `inner`,
// for every pair of `ends`. `enter` and `expand` are scratch masks, all zero on
// entry and on exit.
std::vector<Edge> paths_through(const Graph& g, std::span<const Vertex> ends, std::span<const Vertex> inner,
                                std::vector<std::uint8_t>& enter, std::vector<std::uint8_t>& expand) {
  for (Vertex v : inner) enter[v] = expand[v] = 1;
  for (Vertex v : ends) enter[v] = 1;
  std::vector<Edge> out;
  for (Vertex u : ends) {
    Vertex src[1] = {u};
    auto d = shortest_paths(g, src, {enter, expand});
    for (Vertex v : ends)
      if (v > u && d[v] != kUnreachable) out.push_back({u, v, d[v]});
  }
  for (Vertex v : inner) enter[v] = expand[v] = 0;
  for (Vertex v : ends) enter[v] = 0;
  return out;
}

struct AdhesionRows {
  SideMaxima sides;
  std::vector<Dist> b_far;  // per vertex of B: max distance to A ∪ C
};

AdhesionRows adhesion_rows(const Graph& g, const PartitionABC& part, int threads) {
  const std::size_t k = part.b.size();
  if (k > static_cast<std::size_t>(kMaxIndexDimension) + 1)
    throw Error(ErrorKind::kApexCap, "separator of size " + std::to_string(k) + " exceeds the range-index cap");
  std::vector<std::vector<Dist>> rows(k);
  parallel_for(k, threads, [&](std::size_t i) { rows[i] = sssp(g, part.b[i]).dist; });

  auto points = [&](const std::vector<Vertex>& side) {
    std::vector<Coord> pts;
    pts.reserve(side.size() * k);
    for (Vertex v : side)
      for (std::size_t i = 0; i < k; ++i) {
        if (rows[i][v] == kUnreachable) throw Error(ErrorKind::kDisconnected, "graph is not connected");
        pts.push_back(rows[i][v]);
      }
    return pts;
  };
  AdhesionRows out;
  if (!part.a.empty() && !part.c.empty()) {
    if (k == 0) throw Error(ErrorKind::kDisconnected, "empty separator between non-empty sides");
    auto pa = points(part.a);
    auto pc = points(part.c);
    auto index_c = MaxMinIndex::build(static_cast<int>(k), pc);
    auto index_a = MaxMinIndex::build(static_cast<int>(k), pa);
    out.sides.a_to_c.resize(part.a.size());
    out.sides.c_to_a.resize(part.c.size());
    for (std::size_t j = 0; j < part.a.size(); ++j)
      out.sides.a_to_c[j] = *index_c.query(std::span<const Coord>(pa.data() + j * k, k));
    for (std::size_t j = 0; j < part.c.size(); ++j)
      out.sides.c_to_a[j] = *index_a.query(std::span<const Coord>(pc.data() + j * k, k));
  }
  out.b_far.assign(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (Vertex v : part.a) out.b_far[i] = std::max(out.b_far[i], rows[i][v]);
    for (Vertex v : part.c) out.b_far[i] = std::max(out.b_far[i], rows[i][v]);
    if (out.b_far[i] == kUnreachable) throw Error(ErrorKind::kDisconnected, "graph is not connected");
  }
  return out;
}

void check_partition(const Graph& g, const PartitionABC& part) {
  check_range(g, part.a, "partition");
  check_range(g, part.b, "partition");
  check_range(g, part.c, "partition");
  std::vector<std::uint8_t> side(static_cast<std::size_t>(g.n()), 0);
  auto mark = [&](const std::vector<Vertex>& vs, std::uint8_t tag) {
    for (Vertex v : vs) {
      if (side[v]) throw Error(ErrorKind::kPrecondition, "partition sets overlap");
      side[v] = tag;
    }
  };
  mark(part.a, 1);
  mark(part.b, 2);
  mark(part.c, 3);
  for (Vertex v = 0; v < g.n(); ++v) {
    if (!side[v]) throw Error(ErrorKind::kPrecondition, "partition does not cover vertex " + std::to_string(v + 1));
    if (side[v] != 1) continue;
    for (Vertex u : g.neighbors(v))
      if (side[u] == 3) throw Error(ErrorKind::kPrecondition, "partition has an edge between A and C");
  }
}

}  // namespace

SideMaxima single_adhesion_max_dist(const Graph& g, const PartitionABC& part, int threads) {
  check_partition(g, part);
  if (part.a.empty() || part.c.empty()) throw Error(ErrorKind::kEmptySide, "separation has an empty side");
  return adhesion_rows(g, part, threads).sides;
}

ShortcutGraph shortcut_through(const Graph& g, const PartitionABC& part) {
  check_partition(g, part);
  ShortcutGraph out;
  out.kept = part.a;
  out.kept.insert(out.kept.end(), part.b.begin(), part.b.end());
  out.kept = sorted_unique(std::move(out.kept));
  auto sub = induced_subgraph(g, out.kept);
  auto edges = sub.graph.edges();

  std::vector<std::uint8_t> enter(static_cast<std::size_t>(g.n()), 0), expand(enter);
  auto b = sorted_unique(part.b);
  for (const auto& e : paths_through(g, b, part.c, enter, expand)) {
    Vertex lu = sub.to_local[e.u], lv = sub.to_local[e.v];
    // a direct edge at least as short is not a shortcut
    auto nb = sub.graph.neighbors(lu);
    auto it = std::lower_bound(nb.begin(), nb.end(), lv);
    if (it != nb.end() && *it == lv && sub.graph.weights(lu)[static_cast<std::size_t>(it - nb.begin())] <= e.w) continue;
    edges.push_back({lu, lv, e.w});
    ++out.shortcuts;
  }
  out.graph = Graph::from_edges(static_cast<Vertex>(out.kept.size()), std::move(edges));
  return out;
}

int default_root(const TreeDecomposition& td) {
  int best = 0;
  for (std::size_t t = 1; t < td.node_count(); ++t)
    if (td.bags[t].size() > td.bags[best].size()) best = static_cast<int>(t);
  return best;
}

HeavyLightSplit heavy_light_split(const TreeDecomposition& td, int root, double threshold) {
  const std::size_t nodes = td.node_count();
  if (nodes == 0) throw Error(ErrorKind::kPrecondition, "empty decomposition");
  if (root < 0 || static_cast<std::size_t>(root) >= nodes) throw Error(ErrorKind::kPrecondition, "root out of range");
  HeavyLightSplit s;
  s.root = root;
  s.parent.assign(nodes, -1);
  s.heavy.assign(nodes, 0);
  s.subtree_of.assign(nodes, -1);
  auto adj = td.adjacency();
  std::vector<std::uint8_t> seen(nodes, 0);
  s.order.push_back(root);
  seen[root] = 1;
  for (std::size_t i = 0; i < s.order.size(); ++i)
    for (int c : adj[s.order[i]])
      if (!seen[c]) {
        seen[c] = 1;
        s.parent[c] = s.order[i];
        s.order.push_back(c);
      }

  std::vector<double> unmarked(nodes, 0);
  for (auto it = s.order.rbegin(); it != s.order.rend(); ++it) {
    int t = *it;
    unmarked[t] += static_cast<double>(td.bags[t].size());
    if (t == root) continue;
    if (unmarked[t] >= threshold) {
      s.heavy[t] = 1;
      s.heavy_edges.emplace_back(s.parent[t], t);
    } else {
      unmarked[s.parent[t]] += unmarked[t];
    }
  }
  for (int t : s.order) {
    if (t == root || s.heavy[t]) {
      s.subtree_of[t] = static_cast<int>(s.tops.size());
      s.tops.push_back(t);
      s.subtree_weight.push_back(0);
    } else {
      s.subtree_of[t] = s.subtree_of[s.parent[t]];
    }
    s.subtree_weight[s.subtree_of[t]] += td.bags[t].size();
  }
  std::sort(s.heavy_edges.begin(), s.heavy_edges.end());
  return s;
}

HeavyLightSplit heavy_light_split(const TreeDecomposition& td, int root, std::int64_t n, double delta) {
  return heavy_light_split(td, root, std::pow(static_cast<double>(n), delta));
}

AdhesionReduction reduce_adhesions(std::vector<std::vector<Vertex>> adhesions) {
  AdhesionReduction red;
  for (auto& a : adhesions) a = sorted_unique(std::move(a));
  for (;;) {
    auto it = std::find_if(adhesions.begin(), adhesions.end(), [](const auto& a) { return a.size() > 4; });
    if (it == adhesions.end()) break;
    std::vector<Vertex> batch(it->begin(), it->begin() + 5);
    red.removed.insert(red.removed.end(), batch.begin(), batch.end());
    for (auto& a : adhesions) {
      std::vector<Vertex> rest;
      std::set_difference(a.begin(), a.end(), batch.begin(), batch.end(), std::back_inserter(rest));
      a = std::move(rest);
    }
    ++red.rounds;
  }
  red.removed = sorted_unique(std::move(red.removed));
  red.adhesions = std::move(adhesions);
  return red;
}

StarResult star_ecc(const Graph& g, std::span<const Vertex> apices, const std::vector<std::vector<Vertex>>& parts,
                    const StarParams& params) {
  const Vertex n = g.n();
  const auto un = static_cast<std::size_t>(n);
  if (parts.empty()) throw Error(ErrorKind::kPrecondition, "star needs a centre part");
  check_range(g, apices, "star apices");
  if (!is_connected(g)) throw Error(ErrorKind::kDisconnected, "graph is not connected");
  const int threads = params.engine.threads;

  // Strip A from every part and check the star shape.
  auto given_apex = make_mask(n, apices);
  std::vector<std::vector<Vertex>> part(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    check_range(g, parts[i], "star part");
    for (Vertex v : parts[i])
      if (!given_apex[v]) part[i].push_back(v);
    part[i] = sorted_unique(std::move(part[i]));
  }
  auto core = make_mask(n, part[0]);
  std::vector<std::int32_t> owner(un, -1);
  std::vector<std::vector<Vertex>> adhesions(parts.size() - 1);
  for (std::size_t i = 1; i < part.size(); ++i)
    for (Vertex v : part[i]) {
      if (core[v]) {
        adhesions[i - 1].push_back(v);
        continue;
      }
      if (owner[v] >= 0) throw Error(ErrorKind::kPrecondition, "satellites overlap outside the centre");
      owner[v] = static_cast<std::int32_t>(i);
    }
  for (Vertex v = 0; v < n; ++v)
    if (!given_apex[v] && !core[v] && owner[v] < 0)
      throw Error(ErrorKind::kPrecondition, "vertex " + std::to_string(v + 1) + " is in no part");
  auto in_adhesion = [&](std::int32_t i, Vertex v) {
    const auto& a = adhesions[static_cast<std::size_t>(i - 1)];
    return std::binary_search(a.begin(), a.end(), v);
  };
  for (const auto& e : g.edges()) {
    if (given_apex[e.u] || given_apex[e.v]) continue;
    bool ok = true;
    if (owner[e.u] >= 0 && owner[e.v] >= 0) ok = owner[e.u] == owner[e.v];
    else if (owner[e.u] >= 0) ok = in_adhesion(owner[e.u], e.v);
    else if (owner[e.v] >= 0) ok = in_adhesion(owner[e.v], e.u);
    if (!ok) throw Error(ErrorKind::kPrecondition, "edge leaves its star part");
  }

  StarResult result;
  auto& st = result.stats;
  auto red = reduce_adhesions(adhesions);
  std::vector<Vertex> apex_set(apices.begin(), apices.end());
  apex_set.insert(apex_set.end(), red.removed.begin(), red.removed.end());
  apex_set = sorted_unique(std::move(apex_set));
  st.extra_apices = red.removed.size();
  if (static_cast<int>(apex_set.size()) > params.engine.apex_cap)
    throw Error(ErrorKind::kApexCap, std::to_string(apex_set.size()) + " apices after adhesion reduction exceed the cap");
  auto is_apex = make_mask(n, apex_set);

  // Satellites: components of V_i - V_0 in G - A', each with its attachment set.
  struct Satellite {
    std::vector<Vertex> inner;
    std::vector<Vertex> attach;
    Dist weight = 0;
    bool heavy = false;
  };
  std::vector<Satellite> sats;
  std::vector<std::int32_t> sat_of(un, -1);
  for (Vertex s = 0; s < n; ++s) {
    if (owner[s] < 0 || sat_of[s] >= 0) continue;
    Satellite sat;
    auto id = static_cast<std::int32_t>(sats.size());
    sat_of[s] = id;
    sat.inner.push_back(s);
    for (std::size_t i = 0; i < sat.inner.size(); ++i) {
      Vertex x = sat.inner[i];
      auto nb = g.neighbors(x);
      auto ws = g.weights(x);
      for (std::size_t j = 0; j < nb.size(); ++j) {
        Vertex y = nb[j];
        if (is_apex[y]) continue;
        if (core[y]) {
          sat.attach.push_back(y);
          sat.weight += ws[j];
        } else {
          if (x < y) sat.weight += ws[j];
          if (sat_of[y] < 0) {
            sat_of[y] = id;
            sat.inner.push_back(y);
          }
        }
      }
    }
    std::sort(sat.inner.begin(), sat.inner.end());
    sat.attach = sorted_unique(std::move(sat.attach));
    sats.push_back(std::move(sat));
  }
  const double size_n = static_cast<double>(params.n > 0 ? params.n : n);
  const double delta_p = (1.0 + 97.0 * params.delta) / 151.0;
  const double heavy_at = params.satellite_threshold >= 0 ? params.satellite_threshold : std::pow(size_n, delta_p);
  std::vector<Vertex> heavy_inner;
  for (auto& sat : sats) {
    sat.heavy = static_cast<double>(sat.weight) > heavy_at;
    if (!sat.heavy) continue;
    ++st.heavy_satellites;
    heavy_inner.insert(heavy_inner.end(), sat.inner.begin(), sat.inner.end());
  }
  st.satellites = sats.size();
  std::sort(heavy_inner.begin(), heavy_inner.end());

  // Direct searches from heavy private vertices. far[u] collects the largest
  // distance from u to any vertex removed from G~.
  result.ecc.assign(un, 0);
  std::vector<Dist> far(un, 0);
  {
    const std::size_t blocks = std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), heavy_inner.size()));
    std::vector<std::vector<Dist>> acc(blocks);
    parallel_for(blocks, threads, [&](std::size_t b) {
      acc[b].assign(un, 0);
      for (std::size_t j = b; j < heavy_inner.size(); j += blocks) {
        auto row = sssp(g, heavy_inner[j]).dist;
        Dist best = 0;
        for (std::size_t v = 0; v < un; ++v) {
          best = std::max(best, row[v]);
          acc[b][v] = std::max(acc[b][v], row[v]);
        }
        result.ecc[heavy_inner[j]] = best;
      }
    });
    if (!heavy_inner.empty())
      for (const auto& a : acc)
        for (std::size_t v = 0; v < un; ++v) far[v] = std::max(far[v], a[v]);
  }

  // G~: drop heavy private vertices, add shortcuts through each heavy part.
  std::vector<Vertex> tilde;
  std::vector<Vertex> tilde_id(un, -1);
  for (Vertex v = 0; v < n; ++v) {
    bool dropped = sat_of[v] >= 0 && sats[sat_of[v]].heavy;
    if (dropped) continue;
    tilde_id[v] = static_cast<Vertex>(tilde.size());
    tilde.push_back(v);
  }
  std::vector<Edge> tilde_edges;
  for (const auto& e : g.edges())
    if (tilde_id[e.u] >= 0 && tilde_id[e.v] >= 0) tilde_edges.push_back({tilde_id[e.u], tilde_id[e.v], e.w});
  {
    std::vector<std::uint8_t> enter(un, 0), expand(un, 0);
    for (const auto& sat : sats) {
      if (!sat.heavy) continue;
      std::vector<Vertex> ends = apex_set;
      ends.insert(ends.end(), sat.attach.begin(), sat.attach.end());
      ends = sorted_unique(std::move(ends));
      for (const auto& e : paths_through(g, ends, sat.inner, enter, expand))
        tilde_edges.push_back({tilde_id[e.u], tilde_id[e.v], e.w});
    }
  }
  const auto tn = static_cast<Vertex>(tilde.size());
  auto gt = Graph::from_edges(tn, std::move(tilde_edges));

  // G': subdivide weighted edges not incident to A'. part_of: satellite index
  // for light private vertices (and subdivisions inside them), -1 otherwise.
  std::vector<std::int32_t> part_of(static_cast<std::size_t>(tn), -1);
  for (Vertex i = 0; i < tn; ++i) part_of[i] = sat_of[tilde[i]];
  std::vector<Edge> prime_edges;
  Vertex next = tn;
  const std::int64_t guard = params.subdivision_factor * std::max<std::int64_t>(n, 1);
  for (const auto& e : gt.edges()) {
    if (e.w == 1 || is_apex[tilde[e.u]] || is_apex[tilde[e.v]]) {
      prime_edges.push_back(e);
      continue;
    }
    if (static_cast<std::int64_t>(next) - tn + e.w - 1 > guard)
      throw Error(ErrorKind::kSizeCap, "subdividing weighted edges would add more than " + std::to_string(guard) + " vertices");
    std::int32_t owner_part = part_of[e.u] >= 0 ? part_of[e.u] : part_of[e.v];
    Vertex prev = e.u;
    for (Dist step = 1; step < e.w; ++step) {
      Vertex mid = next++;
      part_of.push_back(owner_part);
      prime_edges.push_back({prev, mid, 1});
      prev = mid;
    }
    prime_edges.push_back({prev, e.v, 1});
  }
  st.subdivided_vertices = static_cast<std::size_t>(next - tn);
  auto gp = Graph::from_edges(next, prime_edges);
  std::vector<Vertex> apex_local;
  for (Vertex a : apex_set) apex_local.push_back(tilde_id[a]);

  // G*_0: contract each light satellite's private part of G' to one vertex.
  std::vector<Vertex> star_id(static_cast<std::size_t>(next), -1);
  std::vector<Vertex> sat_star(sats.size(), -1);
  std::vector<std::vector<Vertex>> sat_members(sats.size());
  Vertex star_n = 0;
  for (Vertex v = 0; v < next; ++v) {
    auto p = part_of[v];
    if (p < 0) {
      star_id[v] = star_n++;
      continue;
    }
    if (sat_star[p] < 0) sat_star[p] = star_n++;
    star_id[v] = sat_star[p];
    sat_members[p].push_back(v);
  }
  std::vector<Vertex> star_back(static_cast<std::size_t>(star_n), -1);  // G' vertex, -1 for contracted
  for (Vertex v = 0; v < next; ++v)
    if (part_of[v] < 0) star_back[star_id[v]] = v;
  std::vector<std::int32_t> star_sat(static_cast<std::size_t>(star_n), -1);
  for (std::size_t p = 0; p < sats.size(); ++p)
    if (sat_star[p] >= 0) star_sat[sat_star[p]] = static_cast<std::int32_t>(p);
  std::vector<Edge> star_edges;
  for (const auto& e : prime_edges)
    if (star_id[e.u] != star_id[e.v]) star_edges.push_back({star_id[e.u], star_id[e.v], 1});
  auto g_star = Graph::from_edges(star_n, std::move(star_edges));
  std::vector<Vertex> apex_star;
  for (Vertex a : apex_local) apex_star.push_back(star_id[a]);

  const double rho_p = (2.0 - 108.0 * params.delta) / 151.0;
  const std::int64_t r = params.r > 0 ? params.r : default_region_size(static_cast<std::int64_t>(size_n), rho_p);
  st.region_size = r;
  auto div0 = build_r_division(g_star, r, apex_star);

  // Expand every contracted vertex to its private part plus attachments.
  std::vector<std::vector<Vertex>> regions;
  regions.reserve(div0.region_count());
  for (const auto& r0 : div0.regions) {
    std::vector<Vertex> region;
    for (Vertex x : r0) {
      if (star_back[x] >= 0) {
        region.push_back(star_back[x]);
        continue;
      }
      const auto p = static_cast<std::size_t>(star_sat[x]);
      region.insert(region.end(), sat_members[p].begin(), sat_members[p].end());
      for (Vertex a : sats[p].attach) region.push_back(tilde_id[a]);
    }
    regions.push_back(sorted_unique(std::move(region)));
  }
  auto div = RDivision::from_regions(gp, std::move(regions), apex_local);

  std::vector<Vertex> targets(static_cast<std::size_t>(tn));
  for (Vertex i = 0; i < tn; ++i) targets[i] = i;
  auto inner = ecc_from_division(gp, apex_local, targets, div, params.engine);
  st.engine = inner.stats;
  st.engine.region_size = r;
  for (Vertex i = 0; i < tn; ++i) result.ecc[tilde[i]] = std::max(inner.ecc[i], far[tilde[i]]);
  return result;
}

CliqueSumResult ecc_cliquesum(const Graph& g, const TreeDecomposition& td_in, const CliqueSumParams& params) {
  const Vertex n = g.n();
  const auto un = static_cast<std::size_t>(n);
  if (td_in.vertex_count != n) throw Error(ErrorKind::kValidation, "decomposition and graph disagree on n");
  const int k = params.k >= 0 ? params.k : static_cast<int>(std::max(td_in.max_adhesion(), td_in.max_apices()));
  auto report = validate_td(g, td_in, k);
  if (!report.ok())
    throw Error(ErrorKind::kValidation,
                "invalid tree decomposition: " + (report.failures.empty() ? std::string("?") : report.failures.front()));
  if (!is_connected(g)) throw Error(ErrorKind::kDisconnected, "graph is not connected");

  CliqueSumResult result;
  result.ecc.assign(un, 0);
  if (n == 0) return result;
  auto& st = result.stats;
  const int threads = params.engine.threads;

  const auto td = merge_comparable_bags(td_in);
  const std::size_t nodes = td.node_count();
  st.bags = nodes;
  const double heavy_at =
      params.heavy_threshold >= 0 ? params.heavy_threshold : std::pow(static_cast<double>(n), params.delta);
  const auto split = heavy_light_split(td, default_root(td), heavy_at);
  st.heavy_edges = split.heavy_edges.size();
  st.subtrees = split.tops.size();

  // DFS preorder so that every T-subtree is a contiguous range.
  std::vector<std::vector<int>> children(nodes);
  for (int t : split.order)
    if (split.parent[t] >= 0) children[split.parent[t]].push_back(t);
  std::vector<int> pre, first(nodes), span_end(nodes);
  {
    std::vector<std::pair<int, std::size_t>> stack{{split.root, 0}};
    first[split.root] = 0;
    pre.push_back(split.root);
    while (!stack.empty()) {
      auto& [t, i] = stack.back();
      if (i < children[t].size()) {
        int c = children[t][i++];
        first[c] = static_cast<int>(pre.size());
        pre.push_back(c);
        stack.emplace_back(c, 0);
      } else {
        span_end[t] = static_cast<int>(pre.size());
        stack.pop_back();
      }
    }
  }
  // Vertices of bags below c (inside = true) or outside c's subtree.
  auto side_vertices = [&](int c, bool inside) {
    std::vector<std::uint8_t> mask(un, 0);
    for (int i = 0; i < static_cast<int>(nodes); ++i) {
      bool below = i >= first[c] && i < span_end[c];
      if (below != inside) continue;
      for (Vertex v : td.bags[pre[i]]) mask[v] = 1;
    }
    return mask;
  };

  // Distances across heavy edges.
  for (auto [p, c] : split.heavy_edges) {
    auto below = side_vertices(c, true);
    auto above = side_vertices(c, false);
    PartitionABC part;
    for (Vertex v = 0; v < n; ++v) {
      if (above[v] && below[v]) part.b.push_back(v);
      else if (above[v]) part.a.push_back(v);
      else if (below[v]) part.c.push_back(v);
    }
    if (part.b.empty()) continue;  // one side is empty since g is connected
    auto rows = adhesion_rows(g, part, threads);
    for (std::size_t j = 0; j < rows.sides.a_to_c.size(); ++j)
      result.ecc[part.a[j]] = std::max(result.ecc[part.a[j]], rows.sides.a_to_c[j]);
    for (std::size_t j = 0; j < rows.sides.c_to_a.size(); ++j)
      result.ecc[part.c[j]] = std::max(result.ecc[part.c[j]], rows.sides.c_to_a[j]);
    for (std::size_t j = 0; j < part.b.size(); ++j)
      result.ecc[part.b[j]] = std::max(result.ecc[part.b[j]], rows.b_far[j]);
  }

  // One pipeline per subtree.
  const double naive_limit = params.naive_threshold >= 0 ? static_cast<double>(params.naive_threshold)
                                                         : std::pow(static_cast<double>(n), params.Delta);
  std::vector<std::uint8_t> enter(un, 0), expand(un, 0);
  for (std::size_t s = 0; s < split.tops.size(); ++s) {
    const int top = split.tops[s];
    std::vector<int> members;
    for (int t : split.order)
      if (split.subtree_of[t] == static_cast<int>(s)) members.push_back(t);
    std::vector<Vertex> verts;
    for (int t : members) verts.insert(verts.end(), td.bags[t].begin(), td.bags[t].end());
    verts = sorted_unique(std::move(verts));
    auto sub = induced_subgraph(g, verts);
    auto edges = sub.graph.edges();

    // Shortcuts through the far side of every incident heavy edge.
    std::vector<std::pair<int, int>> incident;
    if (top != split.root) incident.emplace_back(split.parent[top], top);
    for (int t : members)
      for (int c : children[t])
        if (split.heavy[c]) incident.emplace_back(t, c);
    for (auto [p, c] : incident) {
      bool far_below = c != top;
      auto far_side = side_vertices(c, far_below);
      auto adhesion = td.adhesion(p, c);
      for (Vertex v : adhesion) far_side[v] = 0;
      std::vector<Vertex> inner;
      for (Vertex v = 0; v < n; ++v)
        if (far_side[v]) inner.push_back(v);
      for (const auto& e : paths_through(g, adhesion, inner, enter, expand)) {
        edges.push_back({sub.to_local[e.u], sub.to_local[e.v], e.w});
        ++st.shortcut_edges;
      }
    }
    auto gs = Graph::from_edges(static_cast<Vertex>(verts.size()), std::move(edges));

    std::vector<Dist> local;
    if (static_cast<double>(verts.size()) < naive_limit) {
      local = naive_ecc(gs, threads);
      ++st.naive_subtrees;
    } else {
      std::vector<int> branch(nodes, -1);
      std::vector<std::vector<Vertex>> parts(1);
      for (Vertex v : td.bags[top]) parts[0].push_back(sub.to_local[v]);
      std::vector<int> branch_index(nodes, -1);
      for (int t : members) {
        if (t == top) continue;
        branch[t] = split.parent[t] == top ? t : branch[split.parent[t]];
        if (branch_index[branch[t]] < 0) {
          branch_index[branch[t]] = static_cast<int>(parts.size());
          parts.emplace_back();
        }
        auto& part = parts[branch_index[branch[t]]];
        for (Vertex v : td.bags[t]) part.push_back(sub.to_local[v]);
      }
      std::vector<Vertex> apices;
      for (Vertex a : td.apices[top]) apices.push_back(sub.to_local[a]);
      StarParams sp = params.star;
      sp.engine = params.engine;
      if (sp.n <= 0) sp.n = n;
      sp.delta = params.delta;
      auto star = star_ecc(gs, apices, parts, sp);
      local = std::move(star.ecc);
      ++st.star_subtrees;
      st.engine.regions += star.stats.engine.regions;
      st.engine.boundary_sum += star.stats.engine.boundary_sum;
      st.engine.profile_count += star.stats.engine.profile_count;
      st.engine.max_profile_count = std::max(st.engine.max_profile_count, star.stats.engine.max_profile_count);
      st.engine.region_size = std::max(st.engine.region_size, star.stats.region_size);
      st.engine.build_ms += star.stats.engine.build_ms;
      st.engine.query_ms += star.stats.engine.query_ms;
    }
    for (std::size_t i = 0; i < verts.size(); ++i) result.ecc[verts[i]] = std::max(result.ecc[verts[i]], local[i]);
  }
  return result;
}

}  // namespace sdiam
