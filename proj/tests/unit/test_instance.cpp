#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "ucover/instance.hpp"

namespace ucover {
namespace {

using testing::at_vertices;
using testing::close_rel;
using testing::path_tree;

TEST(ExpectedDistance, SingleLocationIsPlainDistance) {
  Instance inst{path_tree({1.0, 2.0}), {}};
  inst.points.push_back(at_vertices({{2, 1.0}}));
  RootedIndex idx(inst.tree, 0);
  EXPECT_DOUBLE_EQ(expected_distance_naive(inst, idx, TreePoint::at_vertex(0), 0), 3.0);
  EXPECT_DOUBLE_EQ(expected_distance_naive(inst, idx, TreePoint::on_edge(inst.tree, 1, 2, 0.5), 0),
                   1.5);
}

TEST(ExpectedDistance, SymmetricPairIsFlatBetweenTheEnds) {
  Instance inst{path_tree({1.0, 1.0}), {}};
  inst.points.push_back(at_vertices({{0, 0.5}, {2, 0.5}}));
  RootedIndex idx(inst.tree, 1);
  for (Vertex v = 0; v < 3; ++v)
    EXPECT_DOUBLE_EQ(expected_distance_naive(inst, idx, TreePoint::at_vertex(v), 0), 1.0);
}

TEST(ExpectedDistance, ZeroWeightIsZeroEverywhere) {
  Instance inst{path_tree({1.0, 1.0}), {}};
  inst.points.push_back(at_vertices({{0, 0.3}, {2, 0.7}}, 0.0));
  RootedIndex idx(inst.tree, 0);
  for (Vertex v = 0; v < 3; ++v)
    EXPECT_EQ(expected_distance_naive(inst, idx, TreePoint::at_vertex(v), 0), 0.0);
}

TEST(ExpectedDistance, RejectsBadIndex) {
  Instance inst{path_tree({1.0}), {}};
  inst.points.push_back(at_vertices({{0, 1.0}}));
  RootedIndex idx(inst.tree, 0);
  EXPECT_THROW(expected_distance_naive(inst, idx, TreePoint::at_vertex(0), 1), std::exception);
}

TEST(Validate, WellFormedInstanceIsClean) {
  Instance inst{path_tree({1.0}), {}};
  inst.points.push_back(at_vertices({{0, 0.4}, {1, 0.6}}));
  EXPECT_TRUE(validate(inst).empty());
  EXPECT_NO_THROW(require_valid(inst));
}

TEST(Validate, ReportsEachProblem) {
  Instance inst{path_tree({1.0}), {}};
  inst.points.push_back(at_vertices({{0, 0.6}, {1, 0.6}}));
  EXPECT_EQ(validate(inst).size(), 1u);

  Instance dangling{path_tree({1.0}), {}};
  UncertainPoint p;
  p.locations.push_back({TreePoint{0, 5, 0.1}, 1.0});
  dangling.points.push_back(p);
  EXPECT_EQ(validate(dangling).size(), 1u);

  Instance negative{path_tree({1.0}), {}};
  negative.points.push_back(at_vertices({{0, 1.0}}, -1.0));
  EXPECT_EQ(validate(negative).size(), 1u);

  Instance empty{path_tree({1.0}), {}};
  EXPECT_EQ(validate(empty).size(), 1u);
  EXPECT_THROW(require_valid(empty), ValidationError);
}

TEST(Generate, DeterministicAndValid) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    for (bool vc : {false, true}) {
      Instance a = generate_random(seed, 30, 8, 5, vc);
      Instance b = generate_random(seed, 30, 8, 5, vc);
      EXPECT_TRUE(validate(a).empty()) << "seed " << seed;
      ASSERT_EQ(a.point_count(), b.point_count());
      EXPECT_EQ(a.tree.edges().size(), b.tree.edges().size());
      for (int i = 0; i < a.point_count(); ++i) {
        ASSERT_EQ(a.points[i].locations.size(), b.points[i].locations.size());
        for (std::size_t j = 0; j < a.points[i].locations.size(); ++j) {
          EXPECT_EQ(a.points[i].locations[j].point, b.points[i].locations[j].point);
          EXPECT_EQ(a.points[i].locations[j].prob, b.points[i].locations[j].prob);
        }
      }
      if (vc) EXPECT_TRUE(is_vertex_constrained(a));
      for (const Edge& e : a.tree.edges()) {
        EXPECT_GT(e.length, 0.0);
        EXPECT_LE(e.length, 1.0);
      }
    }
  }
}

TEST(Generate, SingleVertexSinglePoint) {
  Instance inst = generate_random(3, 1, 1, 1, true);
  EXPECT_EQ(inst.tree.vertex_count(), 1);
  ASSERT_EQ(inst.point_count(), 1);
  EXPECT_EQ(inst.points[0].locations.size(), 1u);
}

TEST(Generate, RejectsImpossibleParameters) {
  EXPECT_THROW(generate_random(1, 0, 1, 1, false), std::invalid_argument);
  EXPECT_THROW(generate_random(1, 10, 2, 3, true), std::invalid_argument);
}

TEST(ProbabilitySum, WholeEmptyAndComplement) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Instance inst = generate_random(seed, 25, 5, 6, true);
    const int t = inst.tree.vertex_count();
    std::vector<char> all(t, 1), none(t, 0), some(t, 0), rest(t, 0);
    for (Vertex v = 0; v < t; ++v) (uniform01(rng) < 0.5 ? some : rest)[v] = 1;
    for (int i = 0; i < inst.point_count(); ++i) {
      EXPECT_NEAR(probability_sum(inst, i, all), 1.0, 1e-12);
      EXPECT_EQ(probability_sum(inst, i, none), 0.0);
      EXPECT_NEAR(probability_sum(inst, i, some) + probability_sum(inst, i, rest), 1.0, 1e-12);
    }
  }
}

TEST(ExpectedDistance, LinearOnEdgesAndUnimodalOnPaths) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Instance inst = generate_random(seed, 40, 4, 6, false);
    RootedIndex idx(inst.tree, 0);
    for (int i = 0; i < inst.point_count(); ++i) {
      for (const Edge& e : inst.tree.edges()) {
        // Locations inside the edge break linearity there.
        bool inside = false;
        for (const auto& loc : inst.points[i].locations)
          if (!loc.point.is_vertex() && loc.point.u == e.u && loc.point.v == e.v) inside = true;
        if (inside) continue;
        double a = expected_distance_naive(inst, idx, TreePoint::at_vertex(e.u), i);
        double b = expected_distance_naive(inst, idx, TreePoint::at_vertex(e.v), i);
        double m = expected_distance_naive(
            inst, idx, TreePoint::on_edge(inst.tree, e.u, e.v, e.length / 2), i);
        EXPECT_TRUE(close_rel(m, (a + b) / 2));
      }
      // Root path of the deepest vertex: values fall then rise.
      Vertex far = 0;
      for (Vertex v = 0; v < inst.tree.vertex_count(); ++v)
        if (idx.depth_hops(v) > idx.depth_hops(far)) far = v;
      std::vector<double> vals;
      for (Vertex x = far;; x = idx.parent(x)) {
        vals.push_back(expected_distance_naive(inst, idx, TreePoint::at_vertex(x), i));
        if (x == 0) break;
      }
      std::size_t k = 1;
      while (k < vals.size() && vals[k] <= vals[k - 1] + 1e-9) ++k;
      while (k < vals.size() && vals[k] >= vals[k - 1] - 1e-9) ++k;
      EXPECT_EQ(k, vals.size()) << "seed " << seed << " point " << i;
    }
  }
}

}  // namespace
}  // namespace ucover
