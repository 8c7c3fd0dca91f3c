#include "ucover/node_layout.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace ucover {

VertexLocations::VertexLocations(const Instance& inst) {
  const int t = inst.tree.vertex_count();
  start.assign(t + 1, 0);
  for (const auto& p : inst.points)
    for (const auto& loc : p.locations) {
      if (!loc.point.is_vertex()) throw std::invalid_argument("location off a vertex");
      ++start[loc.point.u + 1];
    }
  for (int v = 0; v < t; ++v) start[v + 1] += start[v];
  point.resize(start[t]);
  prob.resize(start[t]);
  std::vector<int> fill(start.begin(), start.end() - 1);
  for (int i = 0; i < inst.point_count(); ++i)
    for (const auto& loc : inst.points[i].locations) {
      int at = fill[loc.point.u]++;
      point[at] = i;
      prob[at] = loc.prob;
    }
}

int NodeLayout::joint_of(Vertex v) const {
  auto it = std::lower_bound(joints.begin(), joints.end(), v);
  return it != joints.end() && *it == v ? static_cast<int>(it - joints.begin()) : -1;
}

NodeLayout make_layout(const DecompTree& dt, int node) {
  const DecompNode& mu = dt.nodes[node];
  NodeLayout lay;
  lay.child_count = static_cast<int>(mu.children.size());
  for (int c : mu.children)
    for (Vertex y : dt.nodes[c].connectors) lay.joints.push_back(y);
  for (Vertex y : mu.connectors) lay.joints.push_back(y);
  std::sort(lay.joints.begin(), lay.joints.end());
  lay.joints.erase(std::unique(lay.joints.begin(), lay.joints.end()), lay.joints.end());

  for (int c : mu.children) {
    std::vector<int> js;
    for (Vertex y : dt.nodes[c].connectors) js.push_back(lay.joint_of(y));
    lay.unit_joints.push_back(std::move(js));
  }
  for (Vertex y : mu.connectors) lay.unit_joints.push_back({lay.joint_of(y)});

  lay.joint_pairs.resize(lay.joints.size());
  lay.pair_id.resize(lay.unit_joints.size());
  for (int u = 0; u < lay.unit_count(); ++u)
    for (int k = 0; k < static_cast<int>(lay.unit_joints[u].size()); ++k) {
      int id = static_cast<int>(lay.pairs.size());
      lay.pairs.emplace_back(u, k);
      lay.pair_id[u].push_back(id);
      lay.joint_pairs[lay.unit_joints[u][k]].push_back(id);
    }

  std::vector<char> state(lay.pairs.size(), 0);
  std::function<void(int)> visit = [&](int p) {
    if (state[p] == 2) return;
    if (state[p] == 1) throw std::logic_error("unit layout is not a tree");
    state[p] = 1;
    auto [u, k] = lay.pairs[p];
    for (int k2 = 0; k2 < static_cast<int>(lay.unit_joints[u].size()); ++k2) {
      if (k2 == k) continue;
      for (int q : lay.joint_pairs[lay.unit_joints[u][k2]])
        if (lay.pairs[q].first != u) visit(q);
    }
    state[p] = 2;
    lay.order.push_back(p);
  };
  for (int p = 0; p < lay.pair_count(); ++p) visit(p);
  return lay;
}

void region_masses(const NodeLayout& lay, const double* unit_mass, const double* joint_mass,
                   double* mass) {
  for (int p : lay.order) {
    auto [u, k] = lay.pairs[p];
    double m = unit_mass[u];
    const auto& js = lay.unit_joints[u];
    for (int k2 = 0; k2 < static_cast<int>(js.size()); ++k2) {
      if (k2 == k) continue;
      m += joint_mass[js[k2]];
      for (int q : lay.joint_pairs[js[k2]])
        if (lay.pairs[q].first != u) m += mass[q];
    }
    mass[p] = m;
  }
}

void region_dists(const NodeLayout& lay, const double* unit_mass, const double* joint_mass,
                  const double* unit_dist, const double* joint_dist, double* mass, double* dist) {
  const int nj = lay.joint_count();
  for (int p : lay.order) {
    auto [u, k] = lay.pairs[p];
    const auto& js = lay.unit_joints[u];
    const int s = js[k];
    double m = unit_mass[u];
    double d = unit_dist[p];
    for (int k2 = 0; k2 < static_cast<int>(js.size()); ++k2) {
      if (k2 == k) continue;
      const int s2 = js[k2];
      const double len = joint_dist[s2 * nj + s];
      m += joint_mass[s2];
      d += joint_mass[s2] * len;
      for (int q : lay.joint_pairs[s2])
        if (lay.pairs[q].first != u) {
          m += mass[q];
          d += dist[q] + mass[q] * len;
        }
    }
    mass[p] = m;
    dist[p] = d;
  }
}

double beyond(const NodeLayout& lay, const double* mass, int u, int s) {
  double m = 0.0;
  for (int q : lay.joint_pairs[s])
    if (lay.pairs[q].first != u) m += mass[q];
  return m;
}

}  // namespace ucover
