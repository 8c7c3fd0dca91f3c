#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "ucover/decomposition.hpp"
#include "ucover/dist_oracle.hpp"

namespace ucover {
namespace {

using testing::at_vertices;
using testing::close_rel;
using testing::path_tree;

Instance random_vc(std::uint64_t seed, int max_n = 15, int max_locations = 120) {
  std::mt19937_64 rng(seed);
  int n = uniform_int(rng, 1, max_n);
  int max_m = uniform_int(rng, 1, std::max(1, max_locations / n));
  int t = uniform_int(rng, 1, n * max_m);
  return generate_random(seed, t, n, max_m, true);
}

TreePoint random_point(const Tree& tree, std::mt19937_64& rng) {
  if (tree.edge_count() == 0 || uniform01(rng) < 0.3)
    return TreePoint::at_vertex(uniform_int(rng, 0, tree.vertex_count() - 1));
  const Edge& e = tree.edge(uniform_int(rng, 0, tree.edge_count() - 1));
  return TreePoint::on_edge(tree, e.u, e.v, uniform01(rng) * e.length);
}

TEST(DistOracle, RootListsNobody) {
  Instance inst = random_vc(3);
  DecompTree dt = decompose(inst);
  DistOracle a3(inst, dt);
  EXPECT_TRUE(a3.outside(dt.root).empty());
}

TEST(DistOracle, DistanceToOwnSingleLocationIsZero) {
  Instance inst{path_tree({1.0, 2.0}), {}};
  inst.points.push_back(at_vertices({{1, 1.0}, {0, 0.0}, {2, 0.0}}));
  DecompTree dt = decompose(inst);
  DistOracle a3(inst, dt);
  EXPECT_EQ(a3.query_ed(TreePoint::at_vertex(1), 0), 0.0);
}

TEST(DistOracle, SymmetricPairAtEdgeMidpoint) {
  Instance inst{path_tree({1.0, 1.0}), {}};
  inst.points.push_back(at_vertices({{0, 0.5}, {2, 0.5}, {1, 0.0}}));
  DecompTree dt = decompose(inst);
  DistOracle a3(inst, dt);
  EXPECT_NEAR(a3.query_ed(TreePoint::on_edge(inst.tree, 0, 1, 0.5), 0), 1.0, 1e-12);
}

TEST(DistOracle, SingleVertexTree) {
  Instance inst{Tree(1), {}};
  inst.points.push_back(at_vertices({{0, 1.0}}, 2.0));
  DecompTree dt = decompose(inst);
  DistOracle a3(inst, dt);
  EXPECT_EQ(a3.query_ed(TreePoint::at_vertex(0), 0), 0.0);
}

TEST(DistOracle, MatchesNaiveOnRandomQueries) {
  std::mt19937_64 rng(42);
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Instance inst = random_vc(seed);
    DecompTree dt = decompose(inst);
    DistOracle a3(inst, dt);
    RootedIndex idx(inst.tree, 0);
    for (int q = 0; q < 200; ++q) {
      TreePoint x = random_point(inst.tree, rng);
      int i = uniform_int(rng, 0, inst.point_count() - 1);
      double want = expected_distance_naive(inst, idx, x, i);
      ASSERT_TRUE(close_rel(a3.query_ed(x, i), want))
          << "seed " << seed << " x " << to_string(x) << " i " << i;
    }
  }
}

TEST(DistOracle, ConnectorSumsMatchNaiveRecount) {
  std::mt19937_64 rng(7);
  int checked = 0;
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    Instance inst = random_vc(seed);
    DecompTree dt = decompose(inst);
    DistOracle a3(inst, dt);
    RootedIndex idx(inst.tree, 0);
    for (int node = 0; node < static_cast<int>(dt.nodes.size()); ++node) {
      const auto& list = a3.outside(node);
      if (list.empty() || uniform01(rng) > 0.3) continue;
      const auto& conn = dt.nodes[node].connectors;
      for (const auto& e : list) {
        double total = 0.0;
        for (std::size_t k = 0; k < conn.size(); ++k) {
          auto region = outside_subtree(dt, inst.tree, node, conn[k]);
          std::vector<char> in(inst.tree.vertex_count(), 0);
          for (Vertex v : region) in[v] = 1;
          double f = 0.0, d = 0.0;
          for (const auto& loc : inst.points[e.point].locations)
            if (in[loc.point.u]) {
              f += loc.prob;
              d += loc.prob * idx.dist(loc.point.u, conn[k]);
            }
          EXPECT_TRUE(close_rel(e.mass[k], f, 1e-12));
          EXPECT_TRUE(close_rel(e.dist[k], d));
          EXPECT_GE(e.dist[k], 0.0);
          total += e.mass[k];
        }
        EXPECT_NEAR(total, 1.0, 1e-9);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(DistOracle, LeafValuesAreOwnExpectedDistances) {
  Instance inst = random_vc(9);
  DecompTree dt = decompose(inst);
  DistOracle a3(inst, dt);
  RootedIndex idx(inst.tree, 0);
  for (Vertex v = 0; v < inst.tree.vertex_count(); ++v)
    for (auto [i, ed] : a3.own(v))
      EXPECT_TRUE(close_rel(ed, expected_distance_naive(inst, idx, TreePoint::at_vertex(v), i)));
}

TEST(DistOracle, EachPointListedOncePerRootPath) {
  for (std::uint64_t seed = 200; seed < 230; ++seed) {
    Instance inst = random_vc(seed);
    DecompTree dt = decompose(inst);
    DistOracle a3(inst, dt);
    for (int leaf = 0; leaf < static_cast<int>(dt.nodes.size()); ++leaf) {
      if (!dt.nodes[leaf].is_leaf()) continue;
      std::vector<int> seen(inst.point_count(), 0);
      for (int node : dt.path_to(leaf))
        for (const auto& e : a3.outside(node)) ++seen[e.point];
      for (int i = 0; i < inst.point_count(); ++i) EXPECT_LE(seen[i], 1);
    }
  }
}

TEST(DistOracle, OneConnectorFormIsTheTwoConnectorFormWithEmptySecondSide) {
  OutsideInfo e;
  e.mass[0] = 1.0;
  e.dist[0] = 2.5;
  double one = outside_ed(e, 2.0, 3.0, 0.0);
  double two = outside_ed(e, 2.0, 3.0, 17.0);
  EXPECT_DOUBLE_EQ(one, 2.0 * (3.0 + 2.5));
  EXPECT_DOUBLE_EQ(one, two);
}

TEST(EdgeLinearForm, SlopeIsWeightBeyondTheEdge) {
  Instance inst{path_tree({2.0, 1.0}), {}};
  inst.points.push_back(at_vertices({{2, 1.0}, {0, 0.0}, {1, 0.0}}, 3.0));
  DecompTree dt = decompose(inst);
  DistOracle a3(inst, dt);
  auto form = a3.edge_linear_form(inst.tree.find_edge(0, 1), 0);
  EXPECT_NEAR(form.slope, -3.0, 1e-12);
  EXPECT_NEAR(form.at(0.0), 9.0, 1e-12);
}

TEST(EdgeLinearForm, MatchesNaiveInsideRandomEdges) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 300; seed < 330; ++seed) {
    Instance inst = random_vc(seed);
    if (inst.tree.edge_count() == 0) continue;
    DecompTree dt = decompose(inst);
    DistOracle a3(inst, dt);
    RootedIndex idx(inst.tree, 0);
    for (int q = 0; q < 20; ++q) {
      int e = uniform_int(rng, 0, inst.tree.edge_count() - 1);
      int i = uniform_int(rng, 0, inst.point_count() - 1);
      auto form = a3.edge_linear_form(e, i);
      const Edge& ed = inst.tree.edge(e);
      double eu = expected_distance_naive(inst, idx, TreePoint::at_vertex(ed.u), i);
      double ev = expected_distance_naive(inst, idx, TreePoint::at_vertex(ed.v), i);
      EXPECT_TRUE(close_rel(form.at(0.0), eu));
      EXPECT_TRUE(close_rel(form.at(ed.length), ev));
      EXPECT_TRUE(close_rel(form.at(ed.length / 2), (eu + ev) / 2));
      for (int k = 1; k <= 5; ++k) {
        double t = ed.length * k / 6.0;
        double want =
            expected_distance_naive(inst, idx, TreePoint::on_edge(inst.tree, ed.u, ed.v, t), i);
        EXPECT_TRUE(close_rel(form.at(t), want));
      }
    }
  }
}

}  // namespace
}  // namespace ucover
