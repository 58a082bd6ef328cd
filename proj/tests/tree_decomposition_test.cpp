#include <gtest/gtest.h>

#include <sstream>

#include "sdiam/error.hpp"
#include "sdiam/oracle.hpp"
#include "sdiam/tree_decomposition.hpp"
#include "test_util.hpp"

using namespace sdiam;

namespace {

bool any_contains(const std::vector<std::string>& msgs, const std::string& needle) {
  for (const auto& m : msgs)
    if (m.find(needle) != std::string::npos) return true;
  return false;
}

ErrorKind parse_kind(const std::string& text) {
  try {
    parse_td(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kInternal;
}

const char* kC5 = "p tw 5 5\n1 2\n2 3\n3 4\n4 5\n5 1\n";

}  // namespace

TEST(TreeDecomposition, SingleBagK4) {
  auto g = parse_graph("p tw 4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
  auto td = parse_td("s td 1 4 4\nb 1 1 2 3 4\n");
  auto rep = validate_td(g, td, 0);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.max_adhesion, 0u);
  EXPECT_STREQ(TdReport::torso_genus, "UNCHECKED");
}

TEST(TreeDecomposition, CycleTwoBags) {
  auto g = parse_graph(kC5);
  auto td = parse_td("s td 2 4 5\nb 1 1 2 3\nb 2 1 3 4 5\n1 2\n");
  auto rep = validate_td(g, td, 2);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.max_adhesion, 2u);
  EXPECT_EQ(td.adhesion(0, 1), (std::vector<Vertex>{0, 2}));
}

TEST(TreeDecomposition, DisconnectedTrace) {
  auto g = parse_graph("p tw 3 2\n1 2\n2 3\n");
  // vertex 1 sits in bags 1 and 3 but not in bag 2 between them
  auto td = parse_td("s td 3 2 3\nb 1 1 2\nb 2 2 3\nb 3 1 3\n1 2\n2 3\n");
  auto rep = validate_td(g, td, 3);
  EXPECT_FALSE(rep.trace_connected);
  EXPECT_FALSE(rep.ok());
}

TEST(TreeDecomposition, AdhesionTooLarge) {
  auto g = parse_graph(kC5);
  auto td = parse_td("s td 2 4 5\nb 1 1 2 3\nb 2 1 3 4 5\n1 2\n");
  auto rep = validate_td(g, td, 1);
  EXPECT_FALSE(rep.adhesion_bound);
  EXPECT_TRUE(any_contains(rep.failures, "tree edge 1 2"));
}

TEST(TreeDecomposition, UncoveredEdge) {
  auto g = parse_graph(kC5);
  auto td = parse_td("s td 2 3 5\nb 1 1 2 3\nb 2 3 4 5\n1 2\n");
  auto rep = validate_td(g, td, 2);
  EXPECT_FALSE(rep.edge_cover);
  EXPECT_TRUE(any_contains(rep.failures, "edge 1 5"));
}

TEST(TreeDecomposition, ApexChecks) {
  auto g = parse_graph(kC5);
  auto td = parse_td("s td 2 4 5\nb 1 1 2 3\nb 2 1 3 4 5\na 1 1 4\na 2 1 3 4\n1 2\n");
  auto rep = validate_td(g, td, 2);
  EXPECT_FALSE(rep.apex_subset);
  EXPECT_FALSE(rep.apex_bound);
}

TEST(TreeDecomposition, ParseErrors) {
  EXPECT_EQ(parse_kind("b 1 1\n"), ErrorKind::kParse);
  EXPECT_EQ(parse_kind("s td 2 2 3\nb 1 1 2\nb 2 2 3\n"), ErrorKind::kParse);          // no edge
  EXPECT_EQ(parse_kind("s td 3 2 3\nb 1 1\nb 2 2\nb 3 3\n1 2\n2 1\n"), ErrorKind::kParse);  // cycle
  EXPECT_EQ(parse_kind("s td 1 2 3\nb 1 1 4\n"), ErrorKind::kParse);
  EXPECT_EQ(parse_kind("s td 1 2 3\nb 2 1\n"), ErrorKind::kParse);
  EXPECT_EQ(parse_kind("s td 1 2 3\nb 1 1\nb 1 2\n"), ErrorKind::kParse);
  EXPECT_EQ(parse_kind("s td 2 2 3\nb 1 1\nb 2 2\n1 x\n"), ErrorKind::kParse);
}

TEST(TreeDecomposition, RoundTrip) {
  auto inst = gen_instance(InstanceKind::kCliquesumChain, 4, 8);
  ASSERT_TRUE(inst.td);
  std::ostringstream out;
  write_td(out, *inst.td);
  auto back = parse_td(out.str());
  EXPECT_EQ(back.bags, inst.td->bags);
  EXPECT_EQ(back.apices, inst.td->apices);
  EXPECT_EQ(back.edges.size(), inst.td->edges.size());
}

TEST(TreeDecomposition, MergeComparable) {
  auto g = parse_graph(kC5);
  // bag 2 is a subset of bag 1 and bag 3 a subset of bag 2
  auto td = parse_td("s td 4 4 5\nb 1 1 2 3\nb 2 1 3\nb 3 3\nb 4 1 3 4 5\na 2 1\n1 2\n2 3\n2 4\n");
  EXPECT_TRUE(validate_td(g, td, 2).ok());
  auto merged = merge_comparable_bags(td);
  EXPECT_EQ(merged.node_count(), 2u);
  EXPECT_EQ(merged.bags[0], (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(merged.apices[0], (std::vector<Vertex>{0}));
  auto rep = validate_td(g, merged, 2);
  EXPECT_TRUE(rep.ok());
  EXPECT_FALSE(rep.comparable_adjacent);
}

TEST(TreeDecomposition, BagWeightBound) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto inst = gen_instance(InstanceKind::kCliquesumChain, seed, 12);
    auto td = merge_comparable_bags(*inst.td);
    auto rep = validate_td(inst.graph, td, inst.k);
    ASSERT_TRUE(rep.ok());
    auto k = static_cast<std::size_t>(inst.k);
    EXPECT_LE(td.total_weight(), static_cast<std::size_t>(inst.graph.n()) + k * td.edges.size());
  }
}
