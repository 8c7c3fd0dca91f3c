#include "ucover/dist_oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "ucover/node_layout.hpp"

namespace ucover {

DistOracle::DistOracle(const Instance& inst, const DecompTree& dt)
    : inst_(inst),
      dt_(dt),
      index_(inst.tree, 0),
      outside_(dt.nodes.size()),
      own_(inst.tree.vertex_count()),
      slot_(inst.point_count(), -1) {
  VertexLocations locs(inst);
  locs_ = &locs;
  std::vector<Inside> all;
  for (int i = 0; i < inst.point_count(); ++i) all.push_back({i, {0.0, 0.0}, {0.0, 0.0}});
  process(dt.root, std::move(all));
  locs_ = nullptr;
}

void DistOracle::process(int node, std::vector<Inside> list) {
  const DecompNode& mu = dt_.nodes[node];
  if (mu.kind == DecompNode::Kind::kLeafVertex) {
    // Only the single-vertex tree gets here: every location sits at v.
    for (const auto& e : list) own_[mu.leaf_vertex].emplace_back(e.point, 0.0);
    return;
  }
  if (mu.kind == DecompNode::Kind::kLeafEdge) return;  // no closed vertices

  const NodeLayout lay = make_layout(dt_, node);
  const int U = lay.unit_count(), J = lay.joint_count(), P = lay.pair_count();
  const int C = lay.child_count;
  const int n = static_cast<int>(list.size());
  for (int s = 0; s < n; ++s) slot_[list[s].point] = s;
  std::vector<double> um(static_cast<std::size_t>(n) * U, 0.0);
  std::vector<double> jm(static_cast<std::size_t>(n) * J, 0.0);
  std::vector<double> ud(static_cast<std::size_t>(n) * P, 0.0);
  std::vector<char> present(static_cast<std::size_t>(n) * C, 0);

  std::vector<double> jd(static_cast<std::size_t>(J) * J);
  for (int a = 0; a < J; ++a)
    for (int b = 0; b < J; ++b) jd[a * J + b] = index_.dist(lay.joints[a], lay.joints[b]);

  const VertexLocations& locs = *locs_;
  for (int c = 0; c < C; ++c) {
    const DecompNode& ch = dt_.nodes[mu.children[c]];
    const auto& pids = lay.pair_id[c];
    for (Vertex v : ch.vertices) {
      if (std::find(ch.open.begin(), ch.open.end(), v) != ch.open.end()) continue;
      const int j = lay.joint_of(v);
      double dv[2] = {0.0, 0.0};
      if (j < 0)
        for (std::size_t k = 0; k < pids.size(); ++k)
          dv[k] = index_.dist(v, lay.joints[lay.joint_at(pids[k])]);
      for (int at = locs.begin(v); at < locs.end(v); ++at) {
        const int s = slot_[locs.point[at]];
        if (s < 0) continue;
        const double f = locs.prob[at];
        present[static_cast<std::size_t>(s) * C + c] = 1;
        if (j >= 0) {
          jm[static_cast<std::size_t>(s) * J + j] += f;
        } else {
          um[static_cast<std::size_t>(s) * U + c] += f;
          for (std::size_t k = 0; k < pids.size(); ++k)
            ud[static_cast<std::size_t>(s) * P + pids[k]] += f * dv[k];
        }
      }
    }
  }
  for (Vertex y : mu.open) {
    const int j = lay.joint_of(y);
    for (int at = locs.begin(y); at < locs.end(y); ++at) {
      const int s = slot_[locs.point[at]];
      if (s >= 0) jm[static_cast<std::size_t>(s) * J + j] += locs.prob[at];
    }
  }
  for (int s = 0; s < n; ++s)
    for (std::size_t k = 0; k < mu.connectors.size(); ++k) {
      const int u = C + static_cast<int>(k);
      um[static_cast<std::size_t>(s) * U + u] = list[s].mass[k];
      ud[static_cast<std::size_t>(s) * P + lay.pair_id[u][0]] = list[s].dist[k];
    }

  std::vector<std::vector<Inside>> down(C);
  std::vector<double> mass(P), dist(P);
  for (int s = 0; s < n; ++s) {
    const int i = list[s].point;
    const double w = inst_.points[i].weight;
    region_dists(lay, &um[static_cast<std::size_t>(s) * U], &jm[static_cast<std::size_t>(s) * J],
                 &ud[static_cast<std::size_t>(s) * P], jd.data(), mass.data(), dist.data());
    for (int c = 0; c < C; ++c) {
      const DecompNode& ch = dt_.nodes[mu.children[c]];
      Inside in{i, {0.0, 0.0}, {0.0, 0.0}};
      const auto& js = lay.unit_joints[c];
      for (std::size_t k = 0; k < js.size(); ++k) {
        in.mass[k] = beyond(lay, mass.data(), c, js[k]);
        in.dist[k] = beyond(lay, dist.data(), c, js[k]);
      }
      if (!present[static_cast<std::size_t>(s) * C + c]) {
        OutsideInfo e;
        e.point = i;
        for (std::size_t k = 0; k < js.size(); ++k) {
          e.mass[k] = in.mass[k] + jm[static_cast<std::size_t>(s) * J + js[k]];
          e.dist[k] = in.dist[k];
        }
        outside_[mu.children[c]].push_back(e);
      } else if (ch.kind == DecompNode::Kind::kLeafVertex) {
        own_[ch.leaf_vertex].emplace_back(i, w * in.dist[0]);
      } else {
        down[c].push_back(in);
      }
    }
  }
  for (const auto& e : list) slot_[e.point] = -1;
  list.clear();
  list.shrink_to_fit();
  for (int c = 0; c < C; ++c)
    if (!down[c].empty()) process(mu.children[c], std::move(down[c]));
}

int DistOracle::leaf_of(const TreePoint& x) const {
  if (x.is_vertex()) {
    if (!inst_.tree.valid_vertex(x.u)) throw std::invalid_argument("vertex out of range");
    return dt_.leaf_of_vertex[x.u];
  }
  int e = inst_.tree.find_edge(x.u, x.v);
  if (e < 0) throw std::invalid_argument("point is not on a tree edge");
  if (!(x.offset >= 0.0 && x.offset <= inst_.tree.edge(e).length))
    throw std::invalid_argument("offset outside the edge");
  return dt_.leaf_of_edge[e];
}

void DistOracle::connector_dists(int node, const TreePoint& x, double& d0, double& d1) const {
  const auto& conn = dt_.nodes[node].connectors;
  d0 = conn.size() > 0 ? index_.dist(x, conn[0]) : 0.0;
  d1 = conn.size() > 1 ? index_.dist(x, conn[1]) : 0.0;
}

const OutsideInfo* DistOracle::find(int node, int i) const {
  const auto& list = outside_[node];
  auto it = std::lower_bound(list.begin(), list.end(), i,
                             [](const OutsideInfo& e, int p) { return e.point < p; });
  return it != list.end() && it->point == i ? &*it : nullptr;
}

double DistOracle::ed_at_node(int node, const OutsideInfo& e, const TreePoint& x) const {
  double d0, d1;
  connector_dists(node, x, d0, d1);
  return outside_ed(e, inst_.points[e.point].weight, d0, d1);
}

double DistOracle::query_ed(const TreePoint& x, int i) const {
  if (i < 0 || i >= inst_.point_count()) throw std::invalid_argument("point index out of range");
  const int leaf = leaf_of(x);
  for (int node = leaf; node >= 0; node = dt_.nodes[node].parent)
    if (const OutsideInfo* e = find(node, i)) return ed_at_node(node, *e, x);
  const auto& own = own_[x.u];
  auto it = std::lower_bound(own.begin(), own.end(), std::pair<int, double>(i, -1.0));
  if (it == own.end() || it->first != i) throw std::logic_error("point missing from the oracle");
  return it->second;
}

EdgeLinearForm DistOracle::edge_linear_form(int edge, int i) const {
  if (edge < 0 || edge >= inst_.tree.edge_count()) throw std::invalid_argument("edge out of range");
  if (i < 0 || i >= inst_.point_count()) throw std::invalid_argument("point index out of range");
  const Edge& ed = inst_.tree.edge(edge);
  for (int node = dt_.leaf_of_edge[edge]; node >= 0; node = dt_.nodes[node].parent)
    if (const OutsideInfo* e = find(node, i)) {
      double eu = ed_at_node(node, *e, TreePoint::at_vertex(ed.u));
      double ev = ed_at_node(node, *e, TreePoint::at_vertex(ed.v));
      return {edge, (ev - eu) / ed.length, eu};
    }
  throw std::logic_error("point missing from the oracle");
}

std::size_t DistOracle::entry_count() const {
  std::size_t total = 0;
  for (const auto& l : outside_) total += l.size();
  return total;
}

}  // namespace ucover
