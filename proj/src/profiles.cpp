#include "sdiam/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "sdiam/error.hpp"
#include "sdiam/parallel.hpp"

namespace sdiam {

AnchorDistances anchor_distances(const Graph& g, std::vector<Vertex> anchors, Vertex pivot,
                                 std::span<const std::uint8_t> excluded, int threads) {
  AnchorDistances ad;
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
  auto it = std::lower_bound(anchors.begin(), anchors.end(), pivot);
  if (it == anchors.end() || *it != pivot)
    throw Error(ErrorKind::kPrecondition, "pivot must be one of the anchors");
  ad.pivot_index = static_cast<std::size_t>(it - anchors.begin());
  ad.anchors = std::move(anchors);

  std::vector<std::uint8_t> allowed;
  if (!excluded.empty()) {
    allowed.resize(excluded.size());
    for (std::size_t v = 0; v < excluded.size(); ++v) allowed[v] = excluded[v] ? 0 : 1;
  }
  ad.rows.resize(ad.anchors.size());
  parallel_for(ad.anchors.size(), threads, [&](std::size_t i) {
    Vertex s[1] = {ad.anchors[i]};
    ad.rows[i] = shortest_paths(g, s, {allowed, {}}).dist;
  });
  return ad;
}

std::vector<AnchorDistances> boundary_distances(const Graph& g, std::span<const Vertex> apices,
                                                const RDivision& div, int threads) {
  auto excluded = make_mask(g.n(), apices);
  std::vector<AnchorDistances> out(div.region_count());
  for (std::size_t i = 0; i < div.region_count(); ++i) {
    if (div.boundary[i].empty()) continue;
    out[i] = anchor_distances(g, div.boundary[i], div.pivot[i], excluded, threads);
  }
  return out;
}

DistanceProfile profile_of(Vertex v, const AnchorDistances& ad, std::int32_t region) {
  DistanceProfile p;
  p.region = region;
  p.values.resize(ad.width());
  if (!ad.reaches(v)) {
    std::fill(p.values.begin(), p.values.end(), kUnreachable);
    return p;
  }
  const Dist base = ad.rows[ad.pivot_index][v];
  for (std::size_t i = 0; i < ad.width(); ++i) p.values[i] = ad.rows[i][v] - base;
  return p;
}

std::vector<std::size_t> ProfileTable::size_histogram() const {
  std::vector<std::size_t> hist;
  for (const auto& g : groups) {
    if (hist.size() <= g.members.size()) hist.resize(g.members.size() + 1, 0);
    ++hist[g.members.size()];
  }
  return hist;
}

ProfileTable group_by_profile(std::span<const Vertex> vertices, const AnchorDistances& ad) {
  const std::size_t width = ad.width();
  const std::size_t count = vertices.size();
  std::vector<Dist> flat(count * width);
  std::vector<std::uint64_t> hash(count, 0x9e3779b97f4a7c15ULL);
  // column by column, so each anchor row is read sequentially
  for (std::size_t i = 0; i < width; ++i) {
    const auto& row = ad.rows[i];
    const auto& pivot = ad.rows[ad.pivot_index];
    for (std::size_t j = 0; j < count; ++j) {
      Vertex v = vertices[j];
      Dist val = pivot[v] == kUnreachable ? kUnreachable : row[v] - pivot[v];
      flat[j * width + i] = val;
      hash[j] = (hash[j] ^ static_cast<std::uint64_t>(val)) * 0x100000001b3ULL;
    }
  }
  auto row = [&](std::size_t j) { return flat.data() + j * width; };

  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;  // hash -> groups
  std::vector<std::size_t> first;                                       // representative per group
  std::vector<std::vector<Vertex>> members;
  for (std::size_t j = 0; j < count; ++j) {
    auto& bucket = buckets[hash[j]];
    std::size_t g = first.size();
    for (std::size_t cand : bucket)
      if (std::equal(row(j), row(j) + width, row(first[cand]))) {
        g = cand;
        break;
      }
    if (g == first.size()) {
      bucket.push_back(g);
      first.push_back(j);
      members.emplace_back();
    }
    members[g].push_back(vertices[j]);
  }

  std::vector<std::size_t> order(first.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(row(first[a]), row(first[a]) + width, row(first[b]), row(first[b]) + width);
  });
  ProfileTable table;
  table.groups.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto& g = table.groups[i];
    g.profile.assign(row(first[order[i]]), row(first[order[i]]) + width);
    g.members = std::move(members[order[i]]);
    std::sort(g.members.begin(), g.members.end());
  }
  return table;
}

ProfileGadget gen_profile_gadget(int k, Dist ell, std::size_t max_vertices) {
  if (k < 2) throw Error(ErrorKind::kPrecondition, "gadget needs k >= 2");
  if (ell < 2 * static_cast<Dist>(k - 1)) throw Error(ErrorKind::kPrecondition, "gadget needs ell >= 2(k-1)");

  ProfileGadget gad;
  gad.k = k;
  gad.ell = ell;
  gad.spacing = ell / (k - 1);
  const Dist p = gad.spacing;

  // size guard: (p+1)^(k-1) gadget vertices, each with at most k(ell+p) path vertices
  double combos = std::pow(static_cast<double>(p + 1), k - 1);
  double estimate = static_cast<double>(ell + 1) + combos * (1.0 + static_cast<double>(k) * static_cast<double>(ell + p));
  if (estimate > static_cast<double>(max_vertices))
    throw Error(ErrorKind::kSizeCap, "profile gadget would exceed " + std::to_string(max_vertices) + " vertices");

  std::vector<Edge> edges;
  Vertex next = 0;
  for (Dist i = 0; i <= ell; ++i) {
    gad.r_path.push_back(next++);
    if (i > 0) edges.push_back({gad.r_path[i - 1], gad.r_path[i], 1});
  }
  for (int i = 0; i < k; ++i) gad.anchors.push_back(gad.r_path[static_cast<std::size_t>(i * p)]);

  std::vector<Dist> a(static_cast<std::size_t>(k), ell);
  for (;;) {
    Vertex u = next++;
    gad.gadget_vertices.push_back(u);
    gad.vectors.push_back(a);
    for (int i = 0; i < k; ++i) {
      Vertex prev = u;
      for (Dist step = 1; step < a[i]; ++step) {
        Vertex mid = next++;
        edges.push_back({prev, mid, 1});
        prev = mid;
      }
      edges.push_back({prev, gad.anchors[i], 1});
    }
    // odometer over a_2..a_k
    int pos = k - 1;
    while (pos >= 1 && a[pos] == ell + p) a[pos--] = ell;
    if (pos < 1) break;
    ++a[pos];
  }
  gad.graph = Graph::from_edges(next, std::move(edges));
  return gad;
}

MilestoneTrace milestones(const Graph& g, std::span<const Vertex> region, Vertex start) {
  if (region.empty()) throw Error(ErrorKind::kPrecondition, "milestones: empty target set");
  MilestoneTrace tr;
  tr.region.assign(region.begin(), region.end());
  std::sort(tr.region.begin(), tr.region.end());
  tr.region.erase(std::unique(tr.region.begin(), tr.region.end()), tr.region.end());

  auto to_set = sssp_to_set(g, tr.region);
  if (to_set[start] == kUnreachable) throw Error(ErrorKind::kDisconnected, "start cannot reach the set");

  Vertex v = start;
  tr.path.push_back(v);
  while (to_set[v] > 0) {
    auto nb = g.neighbors(v);
    auto ws = g.weights(v);
    Vertex next = -1;
    for (std::size_t i = 0; i < nb.size(); ++i)
      if (to_set[nb[i]] != kUnreachable && to_set[nb[i]] + ws[i] == to_set[v] && (next < 0 || nb[i] < next))
        next = nb[i];
    v = next;
    tr.path.push_back(v);
  }

  const Vertex x = tr.endpoint();
  tr.region_rows.reserve(tr.region.size());
  for (Vertex y : tr.region) tr.region_rows.push_back(sssp(g, y).dist);
  for (Vertex u : tr.path) {
    std::vector<Dist> prof(tr.region.size());
    auto xi = static_cast<std::size_t>(std::lower_bound(tr.region.begin(), tr.region.end(), x) - tr.region.begin());
    for (std::size_t i = 0; i < tr.region.size(); ++i) prof[i] = tr.region_rows[i][u] - tr.region_rows[xi][u];
    tr.profiles.push_back(std::move(prof));
  }
  for (std::size_t i = 0; i < tr.path.size(); ++i)
    if (i + 1 == tr.path.size() || tr.profiles[i] != tr.profiles[i + 1]) tr.milestones.push_back(tr.path[i]);
  return tr;
}

}  // namespace sdiam
