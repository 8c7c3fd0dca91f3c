#include <gtest/gtest.h>

#include "test_support.hpp"
#include "ucover/io.hpp"

namespace ucover {
namespace {

using testing::path_tree;

TEST(Io, RoundTripIsExact) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Instance a = generate_random(seed, 20, 5, 4, seed % 2 == 0);
    std::string text = dump_json(instance_to_json(a));
    Instance b = instance_from_json(nlohmann::json::parse(text));
    ASSERT_EQ(a.tree.vertex_count(), b.tree.vertex_count());
    for (int e = 0; e < a.tree.edge_count(); ++e) {
      int f = b.tree.find_edge(a.tree.edge(e).u, a.tree.edge(e).v);
      ASSERT_GE(f, 0);
      EXPECT_EQ(a.tree.edge(e).length, b.tree.edge(f).length);
    }
    ASSERT_EQ(a.point_count(), b.point_count());
    for (int i = 0; i < a.point_count(); ++i) {
      EXPECT_EQ(a.points[i].weight, b.points[i].weight);
      ASSERT_EQ(a.points[i].locations.size(), b.points[i].locations.size());
      for (std::size_t j = 0; j < a.points[i].locations.size(); ++j) {
        EXPECT_EQ(a.points[i].locations[j].point, b.points[i].locations[j].point);
        EXPECT_EQ(a.points[i].locations[j].prob, b.points[i].locations[j].prob);
      }
    }
    EXPECT_EQ(dump_json(instance_to_json(b)), text);
  }
}

TEST(Io, PointsAcceptEitherOrientation) {
  Tree t = path_tree({2.0});
  TreePoint a = point_from_json(t, nlohmann::json{{"edge", {0, 1}}, {"offset", 0.5}});
  TreePoint b = point_from_json(t, nlohmann::json{{"edge", {1, 0}}, {"offset", 1.5}});
  EXPECT_EQ(a, b);
  EXPECT_EQ(point_from_json(t, nlohmann::json{{"edge", {1, 1}}, {"offset", 0.0}}),
            TreePoint::at_vertex(1));
  EXPECT_EQ(point_to_json(TreePoint::at_vertex(1))["edge"], (std::vector<int>{1, 1}));
}

TEST(Io, MalformedDocumentsThrowParseError) {
  EXPECT_THROW(instance_from_json(nlohmann::json::parse("{}")), ParseError);
  EXPECT_THROW(instance_from_json(
                   nlohmann::json::parse(R"({"tree":{"vertices":2,"edges":[[0,1]]},"points":[]})")),
               ParseError);
  EXPECT_THROW(instance_from_json(nlohmann::json::parse(
                   R"({"tree":{"vertices":3,"edges":[[0,1,1.0]]},"points":[]})")),
               ParseError);
}

TEST(Io, SeventeenDigits) {
  EXPECT_EQ(dump_json(nlohmann::json(0.1)), "0.10000000000000001\n");
  EXPECT_EQ(dump_json(nlohmann::json(2.0)), "2.0\n");
}

}  // namespace
}  // namespace ucover
