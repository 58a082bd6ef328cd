#include <gtest/gtest.h>

#include <map>
#include <set>

#include "sdiam/division.hpp"
#include "sdiam/error.hpp"
#include "sdiam/profiles.hpp"
#include "test_util.hpp"

using namespace sdiam;
using namespace sdiam::testing;

TEST(BoundaryDistances, SingleRegionIsEmpty) {
  auto g = grid_graph(4);
  auto div = build_r_division(g, 100);
  auto rows = boundary_distances(g, {}, div);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].width(), 0u);
}

TEST(BoundaryDistances, PathSplit) {
  auto g = path_graph(10);
  auto ad = anchor_distances(g, {5}, 5);
  for (Vertex v = 0; v < 10; ++v) EXPECT_EQ(ad.rows[0][v], std::abs(v - 5));
}

TEST(BoundaryDistances, RowsEqualSearchInGMinusA) {
  auto inst = gen_instance(InstanceKind::kGridPlusApices, 3, 8, GenOptions{2, 8, 1});
  const auto& g = inst.graph;
  auto div = build_r_division(g, 10, inst.apices);
  auto rows = boundary_distances(g, inst.apices, div);
  std::vector<std::uint8_t> allowed(static_cast<std::size_t>(g.n()), 1);
  for (Vertex a : inst.apices) allowed[a] = 0;
  for (std::size_t i = 0; i < div.region_count(); ++i)
    for (std::size_t s = 0; s < rows[i].width(); ++s) {
      Vertex src[1] = {rows[i].anchors[s]};
      auto expect = shortest_paths(g, src, {allowed, {}});
      EXPECT_EQ(rows[i].rows[s], expect.dist);
    }
}

TEST(Profiles, SingleAnchorIsZero) {
  auto g = path_graph(6);
  auto ad = anchor_distances(g, {2}, 2);
  for (Vertex v = 0; v < 6; ++v) EXPECT_EQ(profile_of(v, ad).values, (std::vector<Dist>{0}));
}

TEST(Profiles, PivotVertexAndHandExample) {
  auto g = path_graph(10);
  auto ad = anchor_distances(g, {3, 7}, 3);
  EXPECT_EQ(profile_of(0, ad).values, (std::vector<Dist>{0, 4}));
  EXPECT_EQ(profile_of(3, ad).values, (std::vector<Dist>{0, 4}));  // dist(s_R, s)
  EXPECT_EQ(profile_of(5, ad).values, (std::vector<Dist>{0, 0}));
  EXPECT_EQ(profile_of(9, ad).values, (std::vector<Dist>{0, -4}));
  EXPECT_THROW(anchor_distances(g, {3, 7}, 4), Error);
}

TEST(Profiles, GroupingPartitionsAndRecount) {
  auto inst = gen_instance(InstanceKind::kRandomPlanarMesh, 8, 400);
  const auto& g = inst.graph;
  auto div = build_r_division(g, 30);
  auto rows = boundary_distances(g, {}, div);
  for (std::size_t i = 0; i < div.region_count(); ++i) {
    if (rows[i].width() == 0) continue;
    auto vs = all_vertices(g);
    auto table = group_by_profile(vs, rows[i]);
    std::set<std::vector<Dist>> distinct;
    std::size_t members = 0;
    for (Vertex v : vs) distinct.insert(profile_of(v, rows[i]).values);
    for (std::size_t p = 0; p < table.size(); ++p) {
      members += table.groups[p].members.size();
      for (Vertex v : table.groups[p].members) EXPECT_EQ(profile_of(v, rows[i]).values, table.groups[p].profile);
      if (p > 0) {
        EXPECT_LT(table.groups[p - 1].profile, table.groups[p].profile);
      }
    }
    EXPECT_EQ(members, vs.size());
    EXPECT_EQ(table.size(), distinct.size());
  }
}

TEST(Profiles, SamePatternSingleGroup) {
  auto g = path_graph(8);
  auto ad = anchor_distances(g, {6, 7}, 7);
  std::vector<Vertex> left{0, 1, 2, 3};
  EXPECT_EQ(group_by_profile(left, ad).size(), 1u);
}

TEST(Profiles, PivotIndependence) {
  Rng rng(31);
  for (int t = 0; t < 10; ++t) {
    auto g = random_connected(rng, 120, 60);
    std::vector<Vertex> anchors{3, 17, 40, 77};
    auto a = anchor_distances(g, anchors, 3);
    auto b = anchor_distances(g, anchors, 77);
    auto vs = all_vertices(g);
    auto ta = group_by_profile(vs, a), tb = group_by_profile(vs, b);
    std::set<std::vector<Vertex>> ga, gb;
    for (auto& grp : ta.groups) ga.insert(grp.members);
    for (auto& grp : tb.groups) gb.insert(grp.members);
    EXPECT_EQ(ga, gb);
  }
}

TEST(Gadget, ProfileCounts) {
  for (auto [k, ell, expect] : {std::tuple{3, 8, 25}, std::tuple{2, 4, 5}}) {
    auto gad = gen_profile_gadget(k, ell);
    auto ad = anchor_distances(gad.graph, gad.anchors, gad.anchors[0]);
    EXPECT_EQ(group_by_profile(gad.gadget_vertices, ad).size(), static_cast<std::size_t>(expect));
    EXPECT_EQ(gad.gadget_vertices.size(), static_cast<std::size_t>(expect));
  }
}

TEST(Gadget, DistancesToAnchors) {
  auto gad = gen_profile_gadget(3, 8);
  EXPECT_EQ(gad.spacing, 4);
  for (std::size_t j = 0; j < gad.gadget_vertices.size(); ++j) {
    auto d = sssp(gad.graph, gad.gadget_vertices[j]);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(d[gad.anchors[i]], gad.vectors[j][i]);
  }
}

TEST(Gadget, Guards) {
  EXPECT_THROW(gen_profile_gadget(1, 4), Error);
  EXPECT_THROW(gen_profile_gadget(3, 3), Error);
  try {
    gen_profile_gadget(8, 200, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSizeCap);
  }
}

TEST(Milestones, StartInsideRegion) {
  auto g = path_graph(6);
  std::vector<Vertex> r{2, 3};
  auto tr = milestones(g, r, 2);
  EXPECT_EQ(tr.milestones, (std::vector<Vertex>{2}));
}

TEST(Milestones, SingleTargetPath) {
  auto g = path_graph(10);
  std::vector<Vertex> r{9};
  auto tr = milestones(g, r, 0);
  EXPECT_EQ(tr.path.size(), 10u);
  EXPECT_EQ(tr.milestones, (std::vector<Vertex>{9}));
}

TEST(Milestones, BoundMonotonicityAndPrefixTransfer) {
  Rng rng(37);
  for (int t = 0; t < 60; ++t) {
    auto g = random_connected(rng, static_cast<Vertex>(rng.uniform(20, 150)), static_cast<std::size_t>(rng.uniform(0, 80)),
                              t % 3 == 0 ? 4 : 1);
    // connected R: BFS ball prefix around a random centre
    auto centre = static_cast<Vertex>(rng.uniform(0, g.n() - 1));
    auto size = static_cast<std::size_t>(rng.uniform(1, 12));
    std::vector<Vertex> r{centre};
    std::vector<std::uint8_t> in(static_cast<std::size_t>(g.n()), 0);
    in[centre] = 1;
    for (std::size_t i = 0; i < r.size() && r.size() < size; ++i)
      for (Vertex u : g.neighbors(r[i]))
        if (!in[u] && r.size() < size) {
          in[u] = 1;
          r.push_back(u);
        }
    auto tr = milestones(g, r, static_cast<Vertex>(rng.uniform(0, g.n() - 1)));
    const std::size_t rs = tr.region.size();
    EXPECT_LE(tr.milestones.size(), rs * rs + 1);
    for (std::size_t i = 0; i + 1 < tr.path.size(); ++i)
      for (std::size_t y = 0; y < rs; ++y) ASSERT_LE(tr.profiles[i][y], tr.profiles[i + 1][y]);
    // prefix transfer: u before milestone v with no milestone in between
    std::vector<Dist> along(tr.path.size(), 0);
    auto dstart = sssp(g, tr.path.front());
    for (std::size_t i = 0; i < tr.path.size(); ++i) along[i] = dstart[tr.path[i]];
    for (std::size_t m = 0, prev = 0; m < tr.path.size(); ++m) {
      if (std::find(tr.milestones.begin(), tr.milestones.end(), tr.path[m]) == tr.milestones.end()) continue;
      for (std::size_t u = prev; u <= m; ++u)
        for (std::size_t y = 0; y < rs; ++y)
          ASSERT_EQ(tr.region_rows[y][tr.path[u]], (along[m] - along[u]) + tr.region_rows[y][tr.path[m]]);
      prev = m + 1;
    }
  }
}
