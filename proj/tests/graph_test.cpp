#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "sdiam/error.hpp"
#include "sdiam/graph.hpp"
#include "test_util.hpp"

using namespace sdiam;
using namespace sdiam::testing;

TEST(ParseGraph, Triangle) {
  auto g = parse_graph("p tw 3 3\n1 2\n2 3\n1 3\n");
  EXPECT_EQ(g.n(), 3);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_FALSE(g.weighted());
}

TEST(ParseGraph, WeightedEdge) {
  auto g = parse_graph("p tw 2 1\n1 2 5\n");
  ASSERT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.edges()[0].w, 5);
  EXPECT_TRUE(g.weighted());
}

TEST(ParseGraph, DuplicatesKeepMinimum) {
  auto g = parse_graph("c dup\np tw 2 2\n1 2 4\n1 2 7\n");
  ASSERT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.edges()[0].w, 4);
}

TEST(ParseGraph, SelfLoopDropped) {
  auto g = parse_graph("p tw 2 2\n1 1\n1 2\n");
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(ParseGraph, Errors) {
  auto kind_of = [](const char* text) {
    try {
      parse_graph(text);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::kInternal;
  };
  EXPECT_EQ(kind_of("1 2\n"), ErrorKind::kParse);
  EXPECT_EQ(kind_of("p tw 2 1\n1 3\n"), ErrorKind::kParse);
  EXPECT_EQ(kind_of("p tw 2 1\n1 2 0\n"), ErrorKind::kParse);
  EXPECT_EQ(kind_of("p tw 2 1\np tw 2 1\n"), ErrorKind::kParse);
  EXPECT_EQ(kind_of("p tw 2 1\n1 x\n"), ErrorKind::kParse);
}

TEST(ParseGraph, RoundTrip) {
  Rng rng(7);
  auto g = random_connected(rng, 40, 60, 5);
  std::ostringstream os;
  write_graph(os, g);
  auto h = parse_graph(os.str());
  EXPECT_EQ(h.n(), g.n());
  auto a = g.edges(), b = h.edges();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].u, b[i].u);
    EXPECT_EQ(a[i].v, b[i].v);
    EXPECT_EQ(a[i].w, b[i].w);
  }
}

TEST(Sssp, PathAndTriangle) {
  auto p5 = path_graph(5);
  EXPECT_EQ(sssp(p5, 0).dist, (std::vector<Dist>{0, 1, 2, 3, 4}));
  auto k3 = parse_graph("p tw 3 3\n1 2\n2 3\n1 3\n");
  EXPECT_EQ(sssp(k3, 0).dist, (std::vector<Dist>{0, 1, 1}));
}

TEST(Sssp, MatchesFloydWarshall) {
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    auto g = random_connected(rng, 50, 71, trial % 2 ? 9 : 1);
    auto fw = apsp_floyd_warshall(g);
    for (Vertex s = 0; s < g.n(); ++s) {
      auto d = sssp(g, s);
      for (Vertex v = 0; v < g.n(); ++v) ASSERT_EQ(d[v], fw.at(s, v));
    }
  }
}

TEST(Sssp, EdgeLipschitz) {
  Rng rng(12);
  auto g = random_connected(rng, 80, 100, 6);
  auto d = sssp(g, 3);
  for (const auto& e : g.edges()) EXPECT_LE(std::abs(d[e.u] - d[e.v]), e.w);
}

TEST(Sssp, UnitWeightsMatchUnweighted) {
  Rng rng(13);
  auto g = random_connected(rng, 60, 80, 1);
  auto edges = g.edges();
  edges.push_back({0, 1, 1});
  // Same graph rebuilt through the weighted code path: one heavy edge far from
  // everything, then compare distances on the rest.
  auto h = Graph::from_edges(g.n() + 2, [&] {
    auto e = edges;
    e.push_back({g.n(), g.n() + 1, 5});
    return e;
  }());
  ASSERT_TRUE(h.weighted());
  for (Vertex s = 0; s < g.n(); s += 7) {
    auto a = sssp(g, s), b = sssp(h, s);
    for (Vertex v = 0; v < g.n(); ++v) EXPECT_EQ(a[v], b[v]);
  }
}

TEST(SsspToSet, Examples) {
  auto p5 = path_graph(5);
  std::vector<Vertex> ends{0, 4};
  EXPECT_EQ(sssp_to_set(p5, ends).dist, (std::vector<Dist>{0, 1, 2, 1, 0}));
  auto all = all_vertices(p5);
  EXPECT_EQ(sssp_to_set(p5, all).dist, (std::vector<Dist>(5, 0)));
}

TEST(SsspToSet, EqualsMinOverSources) {
  Rng rng(17);
  auto g = random_connected(rng, 70, 90, 4);
  std::vector<Vertex> set{3, 19, 44, 60};
  auto d = sssp_to_set(g, set);
  for (Vertex v = 0; v < g.n(); ++v) {
    Dist best = kUnreachable;
    for (Vertex s : set) best = std::min(best, sssp(g, s)[v]);
    EXPECT_EQ(d[v], best);
  }
}

TEST(NaiveEcc, PathAndStar) {
  auto p5 = path_graph(5);
  auto ecc = naive_ecc(p5);
  EXPECT_EQ(ecc, (std::vector<Dist>{4, 3, 2, 3, 4}));
  EXPECT_EQ(diameter_of(ecc), 4);
  auto star = parse_graph("p tw 4 3\n1 2\n1 3\n1 4\n");
  EXPECT_EQ(naive_ecc(star), (std::vector<Dist>{1, 2, 2, 2}));
}

TEST(NaiveEcc, MatchesOracleAndThreads) {
  Rng rng(19);
  auto g = random_connected(rng, 200, 150, 3);
  auto expect = oracle_ecc(g);
  EXPECT_EQ(naive_ecc(g, 1), expect);
  EXPECT_EQ(naive_ecc(g, 4), expect);
}

TEST(NaiveEcc, RelabelingPermutesOutput) {
  Rng rng(23);
  auto g = random_connected(rng, 60, 50, 4);
  std::vector<Vertex> perm(60);
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm);
  auto edges = g.edges();
  for (auto& e : edges) {
    e.u = perm[e.u];
    e.v = perm[e.v];
  }
  auto h = Graph::from_edges(g.n(), edges);
  auto eg = naive_ecc(g), eh = naive_ecc(h);
  for (Vertex v = 0; v < g.n(); ++v) EXPECT_EQ(eg[v], eh[perm[v]]);
}

TEST(NaiveEcc, DisconnectedIsTypedError) {
  auto g = parse_graph("p tw 4 2\n1 2\n3 4\n");
  try {
    naive_ecc(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDisconnected);
  }
}

TEST(SearchFilter, RestrictsInteriorVertices) {
  // cycle 0-1-2-3-4-5-0; interior restricted to {1, 2}
  auto g = parse_graph("p tw 6 6\n1 2\n2 3\n3 4\n4 5\n5 6\n6 1\n");
  std::vector<std::uint8_t> enter(6, 0), expand(6, 0);
  enter[1] = enter[2] = enter[3] = 1;
  expand[1] = expand[2] = 1;
  Vertex src[1] = {0};
  auto d = shortest_paths(g, src, {enter, expand});
  EXPECT_EQ(d[3], 3);
  EXPECT_EQ(d[5], kUnreachable);
}

TEST(InducedSubgraph, Mapping) {
  auto p5 = path_graph(5);
  std::vector<Vertex> keep{1, 2, 4};
  auto sub = induced_subgraph(p5, keep);
  EXPECT_EQ(sub.graph.n(), 3);
  EXPECT_EQ(sub.graph.edge_count(), 1u);
  EXPECT_EQ(sub.to_global[2], 4);
  EXPECT_EQ(sub.to_local[3], -1);
}
