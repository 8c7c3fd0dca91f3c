#pragma once

#include <vector>

#include "ucover/dist_oracle.hpp"
#include "ucover/medians.hpp"

namespace ucover {

// Result of a candidate-center query. kUnconstrained: no active point in
// the range (the caller treats it as the root). kInfeasible: some active
// point has Ed > lambda already at the range's LCA vertex.
struct Candidate {
  enum Kind { kUnconstrained, kInfeasible, kPoint };
  Kind kind = kUnconstrained;
  TreePoint point;

  static Candidate unconstrained() { return {}; }
  static Candidate infeasible() { return {kInfeasible, {}}; }
  static Candidate at(const TreePoint& p) { return {kPoint, p}; }
};

// Candidate centers over rank ranges of the median order. For each point
// i, q_i is the point of the path from its median up to the root r that is
// closest to r with Ed(., P_i) <= lambda. A query over ranks [lo, hi]
// returns the deepest q_i among the active points there, provided every one
// lies on the path from the range's LCA vertex to r.
class CandidateIndex {
 public:
  // `rooted` must be rooted at mt.root. Throws InfeasibleError for the
  // smallest i whose median does not reach lambda.
  CandidateIndex(const DistOracle& a3, const MedianTree& mt, const RootedIndex& rooted,
                 double lambda);

  double lambda() const { return lambda_; }
  // q_i by point index.
  const TreePoint& q(int i) const { return q_[i]; }

  // Inclusive 0-based ranks; throws std::invalid_argument on a bad range.
  Candidate query(int lo, int hi) const;
  // No-op when i was already removed.
  void remove(int i);
  bool active(int i) const { return active_[i] != 0; }

  // LCA of the medians with ranks lo..hi.
  Vertex range_lca(int lo, int hi) const;

  // True iff every tree node equals the fold of its active leaves.
  bool consistent() const;

 private:
  Candidate combine(const Candidate& a, const Candidate& b, Vertex v) const;
  bool deeper(const TreePoint& a, const TreePoint& b) const;
  TreePoint solve_q(int i, const std::vector<Vertex>& path) const;
  void pull(int node);

  const DistOracle& a3_;
  const MedianTree& mt_;
  const RootedIndex& rooted_;
  double lambda_;
  int size_ = 1;  // leaves, a power of two
  std::vector<TreePoint> q_;
  std::vector<char> active_;
  std::vector<Candidate> state_;  // heap layout, leaves at size_ + rank
  std::vector<Vertex> lca_;       // per node, kNoVertex for padding
};

}  // namespace ucover
