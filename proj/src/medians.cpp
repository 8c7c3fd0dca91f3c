#include "ucover/medians.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "ucover/node_layout.hpp"

namespace ucover {

namespace {

constexpr double kHalfTolerance = 1e-12;

struct Pending {
  int point;
  double outside[2];  // mass beyond each connector of the node, joint excluded
};

class MedianFinder {
 public:
  MedianFinder(const Instance& inst, const DecompTree& dt)
      : inst_(inst),
        dt_(dt),
        locs_(inst),
        index_(inst.tree, 0),
        slot_(inst.point_count(), -1),
        total_(inst.point_count(), 0.0),
        median_(inst.point_count(), kNoVertex) {
    for (int i = 0; i < inst.point_count(); ++i)
      for (const auto& loc : inst.points[i].locations) total_[i] += loc.prob;
  }

  std::vector<Vertex> run() {
    std::vector<Pending> all;
    for (int i = 0; i < inst_.point_count(); ++i) all.push_back({i, {0.0, 0.0}});
    process(dt_.root, std::move(all));
    for (int i = 0; i < inst_.point_count(); ++i) median_[i] = canonical(i, median_[i]);
    return median_;
  }

 private:
  void process(int node, std::vector<Pending> list) {
    if (list.empty()) return;
    const DecompNode& mu = dt_.nodes[node];
    if (mu.kind == DecompNode::Kind::kLeafVertex) {
      for (const auto& p : list) median_[p.point] = mu.leaf_vertex;
      return;
    }
    if (mu.kind == DecompNode::Kind::kLeafEdge) {
      // Only reachable through rounding; settle between the two ends.
      for (const auto& p : list) {
        double ea = naive_ed(p.point, mu.vertices[0]);
        double eb = naive_ed(p.point, mu.vertices[1]);
        median_[p.point] = eb < ea ? mu.vertices[1] : mu.vertices[0];
      }
      return;
    }

    const NodeLayout lay = make_layout(dt_, node);
    const int U = lay.unit_count(), J = lay.joint_count(), P = lay.pair_count();
    const int n = static_cast<int>(list.size());
    for (int s = 0; s < n; ++s) slot_[list[s].point] = s;
    std::vector<double> um(static_cast<std::size_t>(n) * U, 0.0);
    std::vector<double> jm(static_cast<std::size_t>(n) * J, 0.0);

    auto add_vertex = [&](Vertex v, int unit) {
      const int j = lay.joint_of(v);
      for (int at = locs_.begin(v); at < locs_.end(v); ++at) {
        const int s = slot_[locs_.point[at]];
        if (s < 0) continue;
        if (j >= 0)
          jm[static_cast<std::size_t>(s) * J + j] += locs_.prob[at];
        else
          um[static_cast<std::size_t>(s) * U + unit] += locs_.prob[at];
      }
    };
    for (int c = 0; c < lay.child_count; ++c) {
      const DecompNode& ch = dt_.nodes[mu.children[c]];
      for (Vertex v : ch.vertices)
        if (std::find(ch.open.begin(), ch.open.end(), v) == ch.open.end()) add_vertex(v, c);
    }
    for (Vertex y : mu.open) add_vertex(y, -1);
    for (int s = 0; s < n; ++s)
      for (std::size_t k = 0; k < mu.connectors.size(); ++k)
        um[static_cast<std::size_t>(s) * U + lay.child_count + k] = list[s].outside[k];

    std::vector<std::vector<Pending>> down(lay.child_count);
    std::vector<double> mass(P);
    for (int s = 0; s < n; ++s) {
      const int i = list[s].point;
      const double* u_row = &um[static_cast<std::size_t>(s) * U];
      const double* j_row = &jm[static_cast<std::size_t>(s) * J];
      region_masses(lay, u_row, j_row, mass.data());
      const double half = 0.5 * total_[i];
      const double tol = kHalfTolerance * std::max(1.0, total_[i]);

      int at_joint = -1;
      for (int j = 0; j < J && at_joint < 0; ++j) {
        double heaviest = 0.0;
        for (int q : lay.joint_pairs[j]) heaviest = std::max(heaviest, mass[q]);
        if (heaviest <= half + tol) at_joint = j;
      }
      if (at_joint >= 0) {
        median_[i] = lay.joints[at_joint];
        continue;
      }
      int best = -1;
      double best_min = -1.0;
      for (int c = 0; c < lay.child_count; ++c) {
        double lo = std::numeric_limits<double>::infinity();
        for (int q : lay.pair_id[c]) lo = std::min(lo, mass[q]);
        if (lo > best_min) {
          best_min = lo;
          best = c;
        }
      }
      Pending next{i, {0.0, 0.0}};
      const auto& js = lay.unit_joints[best];
      for (std::size_t k = 0; k < js.size(); ++k)
        next.outside[k] = beyond(lay, mass.data(), best, js[k]);
      down[best].push_back(next);
    }
    for (const auto& p : list) slot_[p.point] = -1;
    list.clear();
    list.shrink_to_fit();
    for (int c = 0; c < lay.child_count; ++c) process(mu.children[c], std::move(down[c]));
  }

  double naive_ed(int i, Vertex v) const {
    return expected_distance_naive(inst_, index_, TreePoint::at_vertex(v), i);
  }

  // The far end of the flat stretch of Ed leaving p through `dir`: the
  // meeting point, seen from p, of every location in that direction.
  Vertex lca_from(Vertex p, Vertex a, Vertex b) const {
    Vertex c1 = index_.lca(a, b), c2 = index_.lca(a, p), c3 = index_.lca(b, p);
    Vertex best = c1;
    if (index_.depth_hops(c2) > index_.depth_hops(best)) best = c2;
    if (index_.depth_hops(c3) > index_.depth_hops(best)) best = c3;
    return best;
  }

  Vertex min_on_path(Vertex a, Vertex b) const {
    Vertex l = index_.lca(a, b);
    Vertex best = l;
    for (Vertex x = a; x != l; x = index_.parent(x)) best = std::min(best, x);
    for (Vertex x = b; x != l; x = index_.parent(x)) best = std::min(best, x);
    return best;
  }

  // Smallest-id vertex among all minimizers, given one minimizer p.
  Vertex canonical(int i, Vertex p) const {
    struct Dir {
      Vertex dir;
      Vertex loc;
      double prob;
    };
    std::vector<Dir> dirs;
    for (const auto& loc : inst_.points[i].locations) {
      Vertex q = loc.point.u;
      if (q == p || loc.prob <= 0.0) continue;
      Vertex d = index_.is_ancestor(p, q) ? index_.level_ancestor(q, index_.depth_hops(p) + 1)
                                          : index_.parent(p);
      dirs.push_back({d, q, loc.prob});
    }
    std::sort(dirs.begin(), dirs.end(), [](const Dir& a, const Dir& b) { return a.dir < b.dir; });
    const double half = 0.5 * total_[i];
    const double tol = kHalfTolerance * std::max(1.0, total_[i]);
    std::vector<Vertex> ends;
    for (std::size_t a = 0; a < dirs.size();) {
      std::size_t b = a;
      double m = 0.0;
      Vertex far = dirs[a].loc;
      for (; b < dirs.size() && dirs[b].dir == dirs[a].dir; ++b) {
        m += dirs[b].prob;
        far = lca_from(p, far, dirs[b].loc);
      }
      if (m >= half - tol) ends.push_back(far);
      a = b;
    }
    if (ends.empty()) return p;
    Vertex best = min_on_path(p, ends[0]);
    if (ends.size() > 1) best = std::min(best, min_on_path(p, ends[1]));
    return best;
  }

  const Instance& inst_;
  const DecompTree& dt_;
  VertexLocations locs_;
  RootedIndex index_;
  std::vector<int> slot_;
  std::vector<double> total_;
  std::vector<Vertex> median_;
};

}  // namespace

std::vector<Vertex> compute_medians(const Instance& inst, const DecompTree& dt) {
  if (inst.point_count() == 0) return {};
  return MedianFinder(inst, dt).run();
}

MedianTree build_median_tree(const Instance& inst, const std::vector<Vertex>& medians) {
  const int t = inst.tree.vertex_count();
  const int n = static_cast<int>(medians.size());
  if (n == 0) throw std::invalid_argument("median tree needs at least one point");
  MedianTree mt;
  mt.median = medians;
  mt.root = *std::min_element(medians.begin(), medians.end());
  RootedIndex index(inst.tree, mt.root);

  std::vector<std::vector<int>> at(t);
  for (int i = 0; i < n; ++i) at[medians[i]].push_back(i);
  mt.in_tm.assign(t, 0);
  const auto& pre = index.preorder();
  for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
    Vertex v = *it;
    if (!at[v].empty()) mt.in_tm[v] = 1;
    if (mt.in_tm[v] && v != mt.root) mt.in_tm[index.parent(v)] = 1;
  }
  mt.parent.assign(t, kNoVertex);
  mt.children.assign(t, {});
  for (Vertex v : pre)  // preorder lists children by increasing id
    if (mt.in_tm[v] && v != mt.root) {
      mt.parent[v] = index.parent(v);
      mt.children[index.parent(v)].push_back(v);
    }

  mt.range_lo.assign(t, -1);
  mt.range_hi.assign(t, -1);
  mt.rank.assign(n, -1);
  std::vector<std::pair<Vertex, std::size_t>> stack{{mt.root, 0}};
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next < mt.children[v].size()) {
      Vertex c = mt.children[v][next++];
      stack.push_back({c, 0});
      continue;
    }
    if (mt.children[v].empty() && mt.first_leaf == kNoVertex) mt.first_leaf = v;
    int lo = static_cast<int>(mt.order.size());
    if (!mt.children[v].empty()) lo = mt.range_lo[mt.children[v].front()];
    for (int i : at[v]) {
      mt.rank[i] = static_cast<int>(mt.order.size());
      mt.order.push_back(i);
    }
    mt.range_lo[v] = lo;
    mt.range_hi[v] = static_cast<int>(mt.order.size()) - 1;
    mt.postorder.push_back(v);
    stack.pop_back();
  }
  return mt;
}

MedianSide exhaustive_probability_check(const Instance& inst, int i, Vertex v) {
  const Tree& tree = inst.tree;
  std::vector<double> mass_at(tree.vertex_count(), 0.0);
  double total = 0.0;
  for (const auto& loc : inst.points.at(i).locations) {
    if (!loc.point.is_vertex()) throw std::invalid_argument("location off a vertex");
    mass_at[loc.point.u] += loc.prob;
    total += loc.prob;
  }
  const double half = 0.5 * total;
  const double tol = kHalfTolerance * std::max(1.0, total);
  MedianSide out;
  for (const auto& inc : tree.neighbors(v)) {
    double m = 0.0;
    std::vector<Vertex> stack{inc.to};
    std::vector<char> seen(tree.vertex_count(), 0);
    seen[v] = seen[inc.to] = 1;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      m += mass_at[x];
      for (const auto& e : tree.neighbors(x))
        if (!seen[e.to]) {
          seen[e.to] = 1;
          stack.push_back(e.to);
        }
    }
    if (m > half + tol) {
      out.at_vertex = false;
      out.toward = inc.to;
    }
  }
  return out;
}

}  // namespace ucover
