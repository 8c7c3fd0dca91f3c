#include <gtest/gtest.h>

#include <random>

#include "decomposition_check.hpp"
#include "test_support.hpp"
#include "ucover/decomposition.hpp"

namespace ucover {
namespace {

using testing::at_vertices;
using testing::check_decomposition;
using testing::path_tree;

Instance random_instance(std::mt19937_64& rng, std::uint64_t seed, int max_m) {
  const int m = uniform_int(rng, 1, max_m);
  // t >= M/2 keeps per-vertex loads small; see HeavyVertexBreaksTheSizeBound.
  const int t = uniform_int(rng, std::max(1, m / 2), m);
  const int max_locs = uniform_int(rng, 1, 8);
  const int n = std::max(1, m / ((max_locs + 1) / 2));
  return generate_random(seed, t, n, std::max(max_locs, (t + n - 1) / n), true);
}

void expect_clean(const DecompTree& dt, const Instance& inst) {
  for (const auto& msg : check_decomposition(dt, inst)) ADD_FAILURE() << msg;
}

TEST(Decomposition, SingleVertexIsOneLeaf) {
  Instance inst{Tree(1), {}};
  inst.points.push_back(at_vertices({{0, 1.0}}));
  DecompTree dt = decompose(inst);
  ASSERT_EQ(dt.nodes.size(), 1u);
  EXPECT_EQ(dt.nodes[0].kind, DecompNode::Kind::kLeafVertex);
  EXPECT_EQ(dt.height(), 0);
  expect_clean(dt, inst);
}

TEST(Decomposition, SingleEdgeSplitsIntoThreeLeaves) {
  Instance inst{path_tree({1.0}), {}};
  inst.points.push_back(at_vertices({{0, 0.5}, {1, 0.5}}));
  DecompTree dt = decompose(inst);
  const DecompNode& root = dt.nodes[dt.root];
  ASSERT_EQ(root.children.size(), 3u);
  EXPECT_EQ(dt.nodes[root.children[0]].kind, DecompNode::Kind::kLeafVertex);
  EXPECT_EQ(dt.nodes[root.children[1]].kind, DecompNode::Kind::kLeafEdge);
  EXPECT_EQ(dt.nodes[root.children[2]].kind, DecompNode::Kind::kLeafVertex);
  EXPECT_EQ(dt.nodes[root.children[1]].open.size(), 2u);
  expect_clean(dt, inst);
}

TEST(Decomposition, PathCentroidIsTheMiddle) {
  Instance inst{path_tree({1.0, 1.0}), {}};
  inst.points.push_back(at_vertices({{0, 0.3}, {1, 0.3}, {2, 0.4}}));
  DecompTree dt = decompose(inst);
  EXPECT_EQ(dt.nodes[dt.root].centroid, 1);
  expect_clean(dt, inst);
}

TEST(Decomposition, StarCentroidIsTheHub) {
  Tree t(7);
  for (Vertex v = 1; v < 7; ++v) t.add_edge(0, v, 1.0);
  Instance inst{t, {}};
  for (Vertex v = 0; v < 7; ++v) inst.points.push_back(at_vertices({{v, 1.0}}));
  DecompTree dt = decompose(inst);
  EXPECT_EQ(dt.nodes[dt.root].centroid, 0);
  expect_clean(dt, inst);
}

TEST(Decomposition, CentroidRejectsTinyPieces) {
  Tree t = path_tree({1.0});
  Piece p = Piece::induced(t, {0, 1}, {}, {});
  EXPECT_THROW(find_centroid(p, {1, 1}), std::invalid_argument);
}

TEST(Decomposition, CentroidSplitsLargeTreesEvenly) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Instance inst = generate_random(seed, 500, 500, 1, true);
    std::vector<Vertex> all(500);
    for (Vertex v = 0; v < 500; ++v) all[v] = v;
    Piece p = Piece::induced(inst.tree, all, {}, {});
    const auto load = location_load(inst);
    auto parts = split_at(p, find_centroid(p, load), load);
    ASSERT_EQ(parts.size(), 2u);
    int total = 0;
    for (const Piece& part : parts) {
      int closed = 0;
      for (char c : part.closed) closed += c;
      EXPECT_LE(closed, 334) << "seed " << seed;
      total += closed;
    }
    EXPECT_EQ(total, 500);
  }
}

TEST(Decomposition, RandomInstancesKeepTheInvariants) {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Instance inst = random_instance(rng, seed, seed % 10 == 0 ? 5000 : 400);
    DecompTree dt = decompose(inst);
    auto bad = check_decomposition(dt, inst);
    EXPECT_TRUE(bad.empty()) << "seed " << seed << ": " << bad.front();
  }
}

TEST(Decomposition, HeavyVertexBreaksTheSizeBound) {
  // Loads 1 and 12 on one edge: any node above the leaf of vertex 1 has size
  // at most 13, and 12 > ceil(2/3 * 13) + 2, so no decomposition can comply.
  Instance inst{path_tree({1.0}), {}};
  inst.points.push_back(at_vertices({{0, 1.0}}));
  for (int k = 0; k < 12; ++k) inst.points.push_back(at_vertices({{1, 1.0}}));
  DecompTree dt = decompose(inst);
  auto bad = check_decomposition(dt, inst);
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_NE(bad[0].find("size 12 over parent 13"), std::string::npos);
}

TEST(Decomposition, OutsidePartsCountTheRest) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Instance inst = random_instance(rng, seed, 300);
    DecompTree dt = decompose(inst);
    const auto load = location_load(inst);
    const long long m = static_cast<long long>(inst.total_locations());
    for (int x = 0; x < static_cast<int>(dt.nodes.size()); ++x) {
      const DecompNode& nd = dt.nodes[x];
      long long outside = 0;
      std::vector<char> mark(inst.tree.vertex_count(), 0);
      for (Vertex y : nd.connectors)
        for (Vertex v : outside_subtree(dt, inst.tree, x, y)) {
          EXPECT_FALSE(mark[v]) << "seed " << seed << " node " << x;
          EXPECT_FALSE(nd.is_closed(v)) << "seed " << seed << " node " << x;
          mark[v] = 1;
          outside += load[v];
        }
      EXPECT_EQ(nd.size + outside, m) << "seed " << seed << " node " << x;
    }
  }
}

TEST(Decomposition, OutsideRejectsNonConnectors) {
  Instance inst{path_tree({1.0, 1.0}), {}};
  inst.points.push_back(at_vertices({{0, 0.3}, {1, 0.3}, {2, 0.4}}));
  DecompTree dt = decompose(inst);
  EXPECT_THROW(outside_subtree(dt, inst.tree, dt.root, 1), std::invalid_argument);
}

TEST(Decomposition, LoadCountsLocationsPerVertex) {
  Instance inst{path_tree({1.0, 1.0}), {}};
  inst.points.push_back(at_vertices({{0, 0.5}, {2, 0.5}}));
  inst.points.push_back(at_vertices({{2, 1.0}}));
  EXPECT_EQ(location_load(inst), (std::vector<int>{1, 0, 2}));
}

TEST(Decomposition, DotNamesEveryNode) {
  Instance inst = generate_random(3, 12, 4, 4, true);
  DecompTree dt = decompose(inst);
  std::string dot = decomposition_to_dot(dt);
  EXPECT_EQ(dot.rfind("digraph decomposition", 0), 0u);
  EXPECT_NE(dot.find("n" + std::to_string(dt.nodes.size() - 1)), std::string::npos);
}

}  // namespace
}  // namespace ucover
