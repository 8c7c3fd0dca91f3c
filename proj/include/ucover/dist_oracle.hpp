#pragma once

#include <utility>
#include <vector>

#include "ucover/decomposition.hpp"
#include "ucover/instance.hpp"

namespace ucover {

struct VertexLocations;

// What a decomposition node knows about a point with no location inside it:
// for each connector y, the probability mass F of the point beyond y and
// the unweighted sum D of prob * d(location, y) over that part. The node's
// own open connectors count as "beyond".
struct OutsideInfo {
  int point = 0;
  double mass[2] = {0.0, 0.0};
  double dist[2] = {0.0, 0.0};
};

// Ed of a point summarized by `e` at a tree point whose distances to the
// node's connectors are d0 and d1. Every caller goes through here so that
// equal inputs give bit-identical results.
inline double outside_ed(const OutsideInfo& e, double weight, double d0, double d1) {
  return weight * (e.mass[0] * d0 + e.mass[1] * d1 + e.dist[0] + e.dist[1]);
}

// Ed(x, P_i) along an edge, as a function of the offset t from edge.u.
struct EdgeLinearForm {
  int edge = -1;
  double slope = 0.0;
  double intercept = 0.0;
  double at(double t) const { return intercept + slope * t; }
};

// Expected-distance oracle over the decomposition. Every point is listed
// at the nodes where it first has no location; a query walks the node path
// of x and evaluates the one entry it meets, or the stored value when x is
// a vertex holding a location of the point.
class DistOracle {
 public:
  // `inst` must be vertex-located and outlive the oracle, as must `dt`.
  DistOracle(const Instance& inst, const DecompTree& dt);

  double query_ed(const TreePoint& x, int i) const;
  EdgeLinearForm edge_linear_form(int edge, int i) const;

  const Instance& instance() const { return inst_; }
  const DecompTree& decomposition() const { return dt_; }
  const RootedIndex& index() const { return index_; }

  // Entries of points with no location in the node, sorted by point.
  const std::vector<OutsideInfo>& outside(int node) const { return outside_[node]; }
  // (point, Ed at v) for points with a location at v, sorted by point.
  const std::vector<std::pair<int, double>>& own(Vertex v) const { return own_[v]; }

  // Decomposition leaf whose path covers x.
  int leaf_of(const TreePoint& x) const;
  // Distances from x to the node's connectors (0 where absent).
  void connector_dists(int node, const TreePoint& x, double& d0, double& d1) const;
  // Entry of point i at the node, or nullptr.
  const OutsideInfo* find(int node, int i) const;

  // Total number of entries over all nodes.
  std::size_t entry_count() const;

 private:
  struct Inside {
    int point;
    double mass[2];  // beyond each connector, connector itself excluded
    double dist[2];
  };
  void process(int node, std::vector<Inside> list);
  double ed_at_node(int node, const OutsideInfo& e, const TreePoint& x) const;

  const Instance& inst_;
  const DecompTree& dt_;
  RootedIndex index_;
  std::vector<std::vector<OutsideInfo>> outside_;
  std::vector<std::vector<std::pair<int, double>>> own_;
  std::vector<int> slot_;
  const VertexLocations* locs_ = nullptr;  // during construction only
};

}  // namespace ucover
