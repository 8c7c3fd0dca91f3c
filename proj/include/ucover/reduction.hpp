#pragma once

#include <vector>

#include "json.hpp"
#include "ucover/instance.hpp"

namespace ucover {

// A vertex-constrained instance derived from a general one, with enough
// bookkeeping to carry points back to the original tree.
struct VCInstance {
  Instance reduced;
  Tree original;

  // One straight piece of an original edge, oriented along a reduced edge.
  struct Piece {
    int edge = -1;      // original edge id
    double from = 0.0;  // offsets measured from the original edge's u
    double to = 0.0;
    double length() const { return to > from ? to - from : from - to; }
  };
  // Per reduced edge id: pieces from reduced edge.u to reduced edge.v.
  std::vector<std::vector<Piece>> edge_pieces;
  // Per reduced vertex: its position on the original tree.
  std::vector<TreePoint> vertex_origin;
  // Per point, per reduced location: index of the original location, or -1
  // for a zero-probability dummy.
  std::vector<std::vector<int>> location_origin;

  bool is_dummy(int i, int j) const { return location_origin[i][j] < 0; }
};

// Splits edges at interior locations, prunes empty leaves, contracts empty
// degree-2 vertices and puts zero-probability dummies on the remaining
// empty vertices. Expects a valid instance.
VCInstance reduce(const Instance& inst);

// Maps points on the reduced tree to the corresponding points on the
// original tree.
std::vector<TreePoint> map_back(const VCInstance& vc, const std::vector<TreePoint>& centers);
TreePoint map_back(const VCInstance& vc, const TreePoint& center);

nlohmann::json reduction_to_json(const VCInstance& vc);

}  // namespace ucover
