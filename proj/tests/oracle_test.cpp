#include <gtest/gtest.h>

#include "sdiam/error.hpp"
#include "sdiam/oracle.hpp"
#include "sdiam/tree_decomposition.hpp"
#include "test_util.hpp"

using namespace sdiam;
using namespace sdiam::testing;

TEST(Apsp, SmallGraphs) {
  auto k3 = parse_graph("p tw 3 3\n1 2\n2 3\n1 3\n");
  auto m = apsp_naive(k3);
  for (Vertex u = 0; u < 3; ++u)
    for (Vertex v = 0; v < 3; ++v) EXPECT_EQ(m.at(u, v), u == v ? 0 : 1);
  auto p4 = path_graph(4);
  auto f = apsp_floyd_warshall(p4);
  for (Vertex u = 0; u < 4; ++u)
    for (Vertex v = 0; v < 4; ++v) EXPECT_EQ(f.at(u, v), std::abs(u - v));
}

TEST(Apsp, TwoOraclesAgree) {
  Rng rng(5);
  for (int t = 0; t < 6; ++t) {
    auto g = random_connected(rng, 60 + t * 10, 80, 10);
    EXPECT_EQ(apsp_naive(g), apsp_floyd_warshall(g));
  }
}

TEST(Apsp, CapRefusal) {
  auto g = path_graph(20);
  try {
    apsp_naive(g, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSizeCap);
  }
}

TEST(RangeOracles, Basics) {
  WeightedPointSet empty(2);
  Coord r[2] = {0, 0};
  EXPECT_FALSE(rangequery_naive(empty, r).has_value());
  WeightedPointSet one(2);
  Coord p[2] = {3, 4};
  one.add(p, 9);
  EXPECT_EQ(rangequery_naive(one, r), 9);
  Coord high[2] = {3, 5};
  EXPECT_FALSE(rangequery_naive(one, high).has_value());
  std::vector<Coord> pts{0, 10, 10, 0};
  Coord zero[2] = {0, 0};
  EXPECT_EQ(maxmin_naive(2, pts, zero), 0);
  EXPECT_FALSE(maxmin_naive(2, {}, zero).has_value());
}

TEST(Rng, Deterministic) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.uniform(-5, 1000), b.uniform(-5, 1000));
  Rng c(1);
  for (int i = 0; i < 1000; ++i) {
    auto x = c.uniform(3, 7);
    EXPECT_GE(x, 3);
    EXPECT_LE(x, 7);
  }
}

TEST(Generators, GridAndKinds) {
  auto grid = gen_instance(InstanceKind::kGrid, 0, 16);
  EXPECT_EQ(grid.graph.n(), 256);
  EXPECT_EQ(grid.graph.edge_count(), 480u);
  EXPECT_THROW(parse_instance_kind("torus"), Error);
  for (const char* name : {"path", "cycle", "grid", "random_planar_mesh", "grid_plus_apices", "profile_gadget",
                           "cliquesum_chain", "star_glue"})
    EXPECT_STREQ(to_string(parse_instance_kind(name)), name);
}

TEST(Generators, DeterministicAndConnected) {
  for (auto kind : {InstanceKind::kPath, InstanceKind::kCycle, InstanceKind::kRandomPlanarMesh,
                    InstanceKind::kGridPlusApices, InstanceKind::kCliquesumChain, InstanceKind::kStarGlue}) {
    GenOptions opts;
    opts.max_weight = 3;
    auto a = gen_instance(kind, 99, 12, opts);
    auto b = gen_instance(kind, 99, 12, opts);
    EXPECT_EQ(a.graph.n(), b.graph.n());
    auto ea = a.graph.edges(), eb = b.graph.edges();
    ASSERT_EQ(ea.size(), eb.size());
    for (std::size_t i = 0; i < ea.size(); ++i) EXPECT_EQ(ea[i].w, eb[i].w);
    EXPECT_TRUE(is_connected(a.graph)) << a.name;
  }
}

TEST(Generators, ApicesLeaveGridConnected) {
  GenOptions opts;
  opts.k = 3;
  auto inst = gen_instance(InstanceKind::kGridPlusApices, 4, 10, opts);
  EXPECT_EQ(inst.apices.size(), 3u);
  std::vector<std::uint8_t> keep(static_cast<std::size_t>(inst.graph.n()), 1);
  for (Vertex a : inst.apices) keep[a] = 0;
  EXPECT_TRUE(is_connected(inst.graph, keep));
}

TEST(Generators, DecompositionsValidate) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto chain = gen_instance(InstanceKind::kCliquesumChain, seed, 8);
    ASSERT_TRUE(chain.td);
    EXPECT_LE(chain.k, 3);
    EXPECT_TRUE(validate_td(chain.graph, *chain.td, chain.k).ok()) << chain.name;
    auto star = gen_instance(InstanceKind::kStarGlue, seed, 5);
    ASSERT_TRUE(star.td);
    EXPECT_EQ(star.k, 6);
    EXPECT_TRUE(validate_td(star.graph, *star.td, star.k).ok()) << star.name;
  }
}

TEST(Generators, Gadget) {
  GenOptions opts;
  opts.k = 3;
  opts.ell = 8;
  auto inst = gen_instance(InstanceKind::kProfileGadget, 0, 0, opts);
  EXPECT_TRUE(is_connected(inst.graph));
  EXPECT_GT(inst.graph.n(), 25);
}
