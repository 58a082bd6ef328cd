#include <gtest/gtest.h>

#include "sdiam/division.hpp"
#include "sdiam/ecc_engine.hpp"
#include "sdiam/error.hpp"
#include "sdiam/profiles.hpp"
#include "test_util.hpp"

using namespace sdiam;
using namespace sdiam::testing;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kInternal;
}

}  // namespace

TEST(RegionApsp, Triangle) {
  auto k3 = parse_graph("p tw 3 3\n1 2\n2 3\n1 3\n");
  std::vector<Vertex> r{0, 1, 2};
  EXPECT_EQ(region_apsp(k3, {}, r), (std::vector<Dist>{0, 1, 1, 1, 0, 1, 1, 1, 0}));
}

TEST(RegionApsp, InducedSemantics) {
  // 5-cycle; region is the induced path 0-1-2-3, whose endpoints are 2 apart via vertex 4
  auto c5 = parse_graph("p tw 5 5\n1 2\n2 3\n3 4\n4 5\n5 1\n");
  std::vector<Vertex> r{0, 1, 2, 3};
  auto d = region_apsp(c5, {}, r);
  EXPECT_EQ(d[0 * 4 + 3], 3);
}

TEST(RegionApsp, RandomMatchesRestrictedSearch) {
  Rng rng(2);
  auto g = random_connected(rng, 80, 60, 5);
  std::vector<Vertex> region;
  for (Vertex v = 0; v < 80; v += 3) region.push_back(v);
  auto d = region_apsp(g, {}, region);
  auto mask = make_mask(g.n(), region);
  for (std::size_t i = 0; i < region.size(); ++i) {
    Vertex src[1] = {region[i]};
    auto row = shortest_paths(g, src, {mask, {}});
    for (std::size_t j = 0; j < region.size(); ++j) EXPECT_EQ(d[i * region.size() + j], row[region[j]]);
  }
}

TEST(EccFromDivision, StarWithCentreApex) {
  auto star = parse_graph("p tw 5 4\n1 2\n1 3\n1 4\n1 5\n");
  std::vector<Vertex> apex{0};
  auto div = RDivision::from_regions(star, {{1}, {2}, {3}, {4}}, apex);
  auto res = ecc_from_division(star, apex, div);
  EXPECT_EQ(res.ecc, (std::vector<Dist>{1, 2, 2, 2, 2}));
}

TEST(EccFromDivision, GridMatchesNaive) {
  auto g = grid_graph(10);
  auto div = build_r_division(g, 16);
  EXPECT_EQ(ecc_from_division(g, {}, div).ecc, naive_ecc(g));
}

TEST(EccFromDivision, GridWithApicesMatchesNaive) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto inst = gen_instance(InstanceKind::kGridPlusApices, seed, 10, GenOptions{2, 8, seed % 2 ? 4 : 1});
    auto div = build_r_division(inst.graph, 16, inst.apices);
    EXPECT_EQ(ecc_from_division(inst.graph, inst.apices, div).ecc, naive_ecc(inst.graph));
  }
}

TEST(EccFromDivision, BatchEqualsScan) {
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    auto inst = gen_instance(InstanceKind::kRandomPlanarMesh, static_cast<std::uint64_t>(t), 200, GenOptions{2, 8, 3});
    auto div = build_r_division(inst.graph, rng.uniform(4, 30));
    EngineOptions batch, scan;
    scan.batch_queries = false;
    EXPECT_EQ(ecc_from_division(inst.graph, {}, div, batch).ecc, ecc_from_division(inst.graph, {}, div, scan).ecc);
  }
}

TEST(EccFromDivision, TargetSubset) {
  Rng rng(4);
  auto g = random_connected(rng, 120, 80, 3);
  std::vector<Vertex> targets{1, 5, 9, 50, 119};
  auto div = build_r_division(g, 12);
  auto res = ecc_from_division(g, {}, targets, div);
  EXPECT_EQ(res.ecc, naive_ecc(g, targets));
}

TEST(EccFromDivision, ApexSeparatesGraph) {
  // two paths joined only through the apex: G - A is disconnected
  auto g = parse_graph("p tw 7 6\n1 2\n2 3\n3 7\n4 5\n5 6\n6 7\n");
  std::vector<Vertex> apex{6};
  auto div = build_r_division(g, 2, apex);
  EXPECT_EQ(ecc_from_division(g, apex, div).ecc, naive_ecc(g));
}

TEST(EccFromDivision, ThreadsDoNotChangeResult) {
  auto inst = gen_instance(InstanceKind::kGridPlusApices, 9, 14, GenOptions{3, 8, 2});
  auto div = build_r_division(inst.graph, 20, inst.apices);
  EngineOptions one, many;
  many.threads = 4;
  EXPECT_EQ(ecc_from_division(inst.graph, inst.apices, div, one).ecc,
            ecc_from_division(inst.graph, inst.apices, div, many).ecc);
}

TEST(EccFromDivision, Preconditions) {
  auto g = grid_graph(4);
  auto div = build_r_division(g, 4);
  std::vector<Vertex> nine{0, 1, 2, 3, 4, 5, 6, 7, 8};
  EXPECT_EQ(kind_of([&] { ecc_from_division(g, nine, div); }), ErrorKind::kApexCap);
  std::vector<Vertex> one{0};
  EXPECT_EQ(kind_of([&] { ecc_from_division(g, one, div); }), ErrorKind::kValidation);
  auto split = parse_graph("p tw 4 2\n1 2\n3 4\n");
  auto div2 = RDivision::from_regions(split, {{0, 1}, {2, 3}});
  EXPECT_EQ(kind_of([&] { ecc_from_division(split, {}, div2); }), ErrorKind::kDisconnected);
}

TEST(CaseCoverage, ThreeCasesGiveDistances) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto inst = gen_instance(InstanceKind::kGridPlusApices, seed, 9, GenOptions{static_cast<int>(seed % 3), 8, 3});
    const auto& g = inst.graph;
    auto div = build_r_division(g, 8, inst.apices);
    auto apex = ApexContext::build(g, inst.apices);
    auto rows = boundary_distances(g, inst.apices, div);
    auto truth = apsp_naive(g);
    auto is_apex = make_mask(g.n(), inst.apices);
    auto add = [](Dist a, Dist b) { return a == kUnreachable || b == kUnreachable ? kUnreachable : a + b; };
    for (Vertex u = 0; u < g.n(); ++u) {
      if (is_apex[u]) continue;
      auto h = static_cast<std::size_t>(div.home[u]);
      const auto& region = div.regions[h];
      auto inner = region_apsp(g, inst.apices, region);
      auto ui = std::lower_bound(region.begin(), region.end(), u) - region.begin();
      for (Vertex v = 0; v < g.n(); ++v) {
        Dist best = kUnreachable;
        for (std::size_t a = 0; a < apex.size(); ++a) best = std::min(best, add(apex.rows[a][u], apex.rows[a][v]));
        if (!is_apex[v]) {
          for (std::size_t s = 0; s < rows[h].width(); ++s) best = std::min(best, add(rows[h].rows[s][u], rows[h].rows[s][v]));
          auto it = std::lower_bound(region.begin(), region.end(), v);
          if (it != region.end() && *it == v)
            best = std::min(best, inner[static_cast<std::size_t>(ui) * region.size() + static_cast<std::size_t>(it - region.begin())]);
        } else {
          best = std::min(best, apex.rows[std::find(apex.apices.begin(), apex.apices.end(), v) - apex.apices.begin()][u]);
        }
        ASSERT_EQ(best, truth.at(u, v)) << "u " << u << " v " << v;
      }
    }
  }
}

TEST(GenusApex, PathClosedForm) {
  auto g = path_graph(100);
  auto res = ecc_genus_apex(g, {});
  for (Vertex i = 0; i < 100; ++i) EXPECT_EQ(res.ecc[i], std::max(i, 99 - i));
  EXPECT_EQ(res.diameter(), 99);
  EXPECT_EQ(res.stats.region_size, 4);
}

TEST(GenusApex, MeshWithApices) {
  auto mesh = gen_instance(InstanceKind::kRandomPlanarMesh, 1, 1500, GenOptions{2, 8, 2});
  // add three apices by hand
  auto edges = mesh.graph.edges();
  Rng rng(77);
  std::vector<Vertex> apices{1500, 1501, 1502};
  for (Vertex a : apices)
    for (int i = 0; i < 25; ++i) edges.push_back({a, static_cast<Vertex>(rng.uniform(0, 1499)), rng.uniform(1, 5)});
  auto g = Graph::from_edges(1503, edges);
  GenusApexParams p;
  p.engine.threads = 2;
  EXPECT_EQ(ecc_genus_apex(g, apices, p).ecc, naive_ecc(g, 2));
}

TEST(GenusApex, Preconditions) {
  auto g = path_graph(3);
  std::vector<Vertex> all{0, 1, 2};
  EXPECT_EQ(kind_of([&] { ecc_genus_apex(g, all); }), ErrorKind::kPrecondition);
  std::vector<Vertex> mid{1};
  EXPECT_EQ(kind_of([&] { ecc_genus_apex(g, mid); }), ErrorKind::kDisconnected);
  std::vector<Vertex> dup{0, 0};
  EXPECT_EQ(kind_of([&] { ecc_genus_apex(g, dup); }), ErrorKind::kPrecondition);
}
