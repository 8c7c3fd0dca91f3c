#pragma once

#include <utility>
#include <vector>

#include "ucover/decomposition.hpp"

namespace ucover {

// Locations grouped by vertex, for vertex-located instances.
struct VertexLocations {
  std::vector<int> start;  // size vertex_count + 1
  std::vector<int> point;
  std::vector<double> prob;

  explicit VertexLocations(const Instance& inst);
  int begin(Vertex v) const { return start[v]; }
  int end(Vertex v) const { return start[v + 1]; }
};

// An internal decomposition node seen as a small tree of units glued at
// joint vertices. Units 0..child_count-1 are the children; unit
// child_count + k is the part of the tree beyond the node's k-th connector.
// Joint masses are kept apart from unit masses so a joint's own
// probability never leaks into a neighbouring region.
struct NodeLayout {
  std::vector<Vertex> joints;  // sorted
  int child_count = 0;
  std::vector<std::vector<int>> unit_joints;  // per unit, joint ids
  // Directed pairs (unit u, slot k): the region reached from joint
  // unit_joints[u][k] by entering u. Flat ids in pair_id[u][k].
  std::vector<std::vector<int>> pair_id;
  std::vector<std::pair<int, int>> pairs;     // flat id -> (u, k)
  std::vector<std::vector<int>> joint_pairs;  // per joint: flat ids
  std::vector<int> order;                     // dependencies first

  int unit_count() const { return static_cast<int>(unit_joints.size()); }
  int joint_count() const { return static_cast<int>(joints.size()); }
  int pair_count() const { return static_cast<int>(pairs.size()); }
  int joint_of(Vertex v) const;  // -1 when v is not a joint
  int joint_at(int pair) const { return unit_joints[pairs[pair].first][pairs[pair].second]; }
};

NodeLayout make_layout(const DecompTree& dt, int node);

// Region masses for one point: mass[p] for every directed pair p, given the
// mass inside each unit (joints excluded) and at each joint.
void region_masses(const NodeLayout& lay, const double* unit_mass, const double* joint_mass,
                   double* mass);

// Same, plus dist[p] = sum of prob * distance to the pair's joint over the
// region. unit_dist[p] covers the unit's own interior for pair p;
// joint_dist is a joint_count x joint_count row-major matrix.
void region_dists(const NodeLayout& lay, const double* unit_mass, const double* joint_mass,
                  const double* unit_dist, const double* joint_dist, double* mass, double* dist);

// Mass beyond joint s as seen from unit u (joint s excluded).
double beyond(const NodeLayout& lay, const double* mass, int u, int s);

}  // namespace ucover
