#pragma once

#include <vector>

#include "ucover/decomposition.hpp"
#include "ucover/instance.hpp"

namespace ucover {

// Per point, the smallest-id vertex minimizing Ed(., P_i). Expects a
// vertex-located instance and its decomposition. Zero-weight points get the
// median of their distribution (every vertex minimizes for them).
std::vector<Vertex> compute_medians(const Instance& inst, const DecompTree& dt);

// The minimal subtree spanning all medians, rooted at the smallest-id
// median vertex. Ranks 0..n-1 follow a post-order that visits children by
// increasing id, so the medians of every subtree occupy a contiguous rank
// range and the root's medians take the last ranks.
struct MedianTree {
  std::vector<Vertex> median;  // per point
  Vertex root = kNoVertex;
  Vertex first_leaf = kNoVertex;              // where the post-order starts
  std::vector<int> order;                     // rank -> point
  std::vector<int> rank;                      // point -> rank
  std::vector<Vertex> postorder;              // T_m vertices in visiting order
  std::vector<char> in_tm;                    // per tree vertex
  std::vector<Vertex> parent;                 // parent inside T_m, root: -1
  std::vector<std::vector<Vertex>> children;  // sorted by id
  std::vector<int> range_lo, range_hi;        // inclusive rank range, -1 off T_m

  bool contains(Vertex v) const { return in_tm[v] != 0; }
  Vertex median_of_rank(int r) const { return median[order[r]]; }
};

MedianTree build_median_tree(const Instance& inst, const std::vector<Vertex>& medians);

// Which side of v holds a median of P_i, by the half-mass rule: a component
// of T - v carrying more than half the mass holds every median; otherwise v
// is a median. Brute force over the whole tree.
struct MedianSide {
  bool at_vertex = true;
  Vertex toward = kNoVertex;  // neighbor of v leading to the heavy side
};
MedianSide exhaustive_probability_check(const Instance& inst, int i, Vertex v);

}  // namespace ucover
