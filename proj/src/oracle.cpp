#include "ucover/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace ucover::oracle {

namespace {

void require_vertex_locations(const Instance& inst) {
  for (const auto& p : inst.points)
    for (const auto& loc : p.locations)
      if (!loc.point.is_vertex()) throw std::invalid_argument("oracle expects vertex locations");
}

double ed(const Instance& inst, const RootedIndex& idx, const TreePoint& x, int i) {
  return expected_distance_naive(inst, idx, x, i);
}

double ed(const Instance& inst, const RootedIndex& idx, Vertex v, int i) {
  return expected_distance_naive(inst, idx, TreePoint::at_vertex(v), i);
}

bool covers(const Instance& inst, const RootedIndex& idx, const TreePoint& x, int i,
            double lambda) {
  return ed(inst, idx, x, i) <= lambda + band(lambda);
}

Vertex median_with(const Instance& inst, const RootedIndex& idx, int i) {
  Vertex best = 0;
  double best_ed = ed(inst, idx, Vertex{0}, i);
  for (Vertex v = 1; v < inst.tree.vertex_count(); ++v) {
    double e = ed(inst, idx, v, i);
    if (e < best_ed - 1e-12 * std::max(1.0, best_ed)) {
      best = v;
      best_ed = e;
    }
  }
  return best;
}

// A walk along a vertex path, measured by distance from its first vertex.
struct PathWalk {
  const Tree& tree;
  std::vector<Vertex> verts;
  std::vector<double> at;  // cumulative distance to each vertex

  PathWalk(const Tree& t, std::vector<Vertex> path) : tree(t), verts(std::move(path)) {
    at.push_back(0.0);
    for (std::size_t k = 1; k < verts.size(); ++k)
      at.push_back(at.back() + tree.edge(tree.find_edge(verts[k - 1], verts[k])).length);
  }
  double length() const { return at.back(); }
  TreePoint point(double s) const {
    if (s <= 0.0) return TreePoint::at_vertex(verts.front());
    if (s >= length()) return TreePoint::at_vertex(verts.back());
    std::size_t k = std::upper_bound(at.begin(), at.end(), s) - at.begin();
    double off = std::min(s - at[k - 1], at[k] - at[k - 1]);
    return TreePoint::on_edge(tree, verts[k - 1], verts[k], off);
  }
};

}  // namespace

std::vector<Vertex> tree_path(const RootedIndex& rooted, Vertex a, Vertex b) {
  Vertex l = rooted.lca(a, b);
  std::vector<Vertex> up, down;
  for (Vertex x = a; x != l; x = rooted.parent(x)) up.push_back(x);
  for (Vertex x = b; x != l; x = rooted.parent(x)) down.push_back(x);
  up.push_back(l);
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

Vertex naive_median(const Instance& inst, int i) {
  require_vertex_locations(inst);
  RootedIndex idx(inst.tree, 0);
  return median_with(inst, idx, i);
}

std::optional<TreePoint> naive_path_scan(const Instance& inst, const RootedIndex& rooted, int i,
                                         Vertex v, double lambda) {
  double here = ed(inst, rooted, v, i);
  if (here > lambda) return std::nullopt;
  Vertex x = v;
  while (x != rooted.root()) {
    Vertex up = rooted.parent(x);
    double there = ed(inst, rooted, up, i);
    if (there > lambda) {
      double len = rooted.parent_length(x);
      double h = (lambda - here) / (there - here) * len;
      return TreePoint::on_edge(inst.tree, x, up, std::clamp(h, 0.0, len));
    }
    here = there;
    x = up;
  }
  return TreePoint::at_vertex(x);
}

std::vector<TreePoint> naive_greedy_cover(const Instance& inst, double lambda) {
  require_vertex_locations(inst);
  const int n = inst.point_count();
  const int t = inst.tree.vertex_count();
  RootedIndex base(inst.tree, 0);
  std::vector<Vertex> med(n);
  for (int i = 0; i < n; ++i) {
    med[i] = median_with(inst, base, i);
    double best = ed(inst, base, med[i], i);
    if (best > lambda + band(lambda)) throw InfeasibleError(i, best, lambda);
  }
  const Vertex r = *std::min_element(med.begin(), med.end());
  RootedIndex rooted(inst.tree, r);

  std::vector<char> in_tm(t, 0);
  for (Vertex m : med)
    for (Vertex x = m; !in_tm[x]; x = rooted.parent(x)) {
      in_tm[x] = 1;
      if (x == r) break;
    }
  // Post-order over the spanning tree, children by increasing id.
  std::vector<Vertex> post;
  std::vector<std::vector<Vertex>> kids(t);
  for (Vertex v : rooted.preorder())
    if (in_tm[v] && v != r) kids[rooted.parent(v)].push_back(v);
  std::vector<std::pair<Vertex, std::size_t>> stack{{r, 0}};
  while (!stack.empty()) {
    auto [v, k] = stack.back();
    if (k < kids[v].size()) {
      stack.back().second++;
      stack.push_back({kids[v][k], 0});
    } else {
      post.push_back(v);
      stack.pop_back();
    }
  }

  std::vector<char> active(n, 1);
  std::vector<TreePoint> centers;
  auto place = [&](const TreePoint& c) {
    centers.push_back(c);
    for (int j = 0; j < n; ++j)
      if (active[j] && covers(inst, rooted, c, j, lambda)) active[j] = 0;
  };
  for (Vertex v : post) {
    std::vector<int> here;
    for (int i = 0; i < n; ++i)
      if (active[i] && rooted.is_ancestor(v, med[i])) here.push_back(i);
    if (here.empty()) continue;
    if (v == r) {
      place(TreePoint::at_vertex(r));
      continue;
    }
    const Vertex u = rooted.parent(v);
    const double len = rooted.parent_length(v);
    double lowest = len;
    bool blocked = false;
    for (int i : here) {
      double eu = ed(inst, rooted, u, i);
      if (eu <= lambda + band(lambda)) continue;
      double ev = ed(inst, rooted, v, i);
      double h = std::clamp((lambda - ev) / (eu - ev) * len, 0.0, len);
      lowest = std::min(lowest, h);
      blocked = true;
    }
    if (blocked) place(TreePoint::on_edge(inst.tree, v, u, lowest));
  }
  for (int i = 0; i < n; ++i)
    if (active[i]) throw std::logic_error("naive greedy left a point uncovered");
  return centers;
}

int exhaustive_cover_optimum(const Instance& inst, double lambda, int cap) {
  require_vertex_locations(inst);
  const int n = inst.point_count();
  if (n > 8) throw std::invalid_argument("exhaustive optimum is limited to 8 points");
  const Tree& tree = inst.tree;
  RootedIndex idx(tree, 0);
  std::vector<TreePoint> cand;
  for (Vertex v = 0; v < tree.vertex_count(); ++v) cand.push_back(TreePoint::at_vertex(v));
  for (int e = 0; e < tree.edge_count(); ++e) {
    const Edge& ed_ = tree.edge(e);
    for (int i = 0; i < n; ++i) {
      double a = ed(inst, idx, ed_.u, i), b = ed(inst, idx, ed_.v, i);
      if ((a - lambda) * (b - lambda) < 0.0) {
        double off = (lambda - a) / (b - a) * ed_.length;
        cand.push_back(TreePoint::on_edge(tree, ed_.u, ed_.v, std::clamp(off, 0.0, ed_.length)));
      }
    }
  }
  const int full = (1 << n) - 1;
  std::vector<char> seen(full + 1, 0);
  std::vector<int> masks;
  int reach = 0;
  for (const auto& c : cand) {
    int m = 0;
    for (int i = 0; i < n; ++i)
      if (covers(inst, idx, c, i, lambda)) m |= 1 << i;
    reach |= m;
    if (m && !seen[m]) {
      seen[m] = 1;
      masks.push_back(m);
    }
  }
  if (reach != full) {
    for (int i = 0; i < n; ++i)
      if (!(reach >> i & 1)) {
        RootedIndex base(tree, 0);
        throw InfeasibleError(i, ed(inst, base, median_with(inst, base, i), i), lambda);
      }
  }
  // Fewest masks whose union is everything, by breadth-first search.
  std::vector<int> dist(full + 1, -1);
  dist[0] = 0;
  std::vector<int> frontier{0};
  while (!frontier.empty() && dist[full] < 0) {
    std::vector<int> next;
    for (int s : frontier)
      for (int m : masks)
        if (dist[s | m] < 0) {
          dist[s | m] = dist[s] + 1;
          next.push_back(s | m);
        }
    frontier = std::move(next);
  }
  if (dist[full] > cap) throw std::runtime_error("exhaustive optimum exceeds the cap");
  return dist[full];
}

std::optional<TreePoint> naive_balance_point(const Instance& inst, int i, int j, Vertex a,
                                             Vertex b) {
  require_vertex_locations(inst);
  RootedIndex idx(inst.tree, 0);
  PathWalk walk(inst.tree, tree_path(idx, a, b));
  auto h = [&](double s) {
    TreePoint x = walk.point(s);
    return ed(inst, idx, x, i) - ed(inst, idx, x, j);
  };
  const double L = walk.length();
  if (h(0.0) > 0.0 || h(L) < 0.0) return std::nullopt;
  if (L == 0.0) return walk.point(0.0);
  const int samples = 64 * static_cast<int>(walk.verts.size());
  double lo = 0.0, hi = L;
  double prev = 0.0;
  for (int k = 1; k <= samples; ++k) {
    double s = L * k / samples;
    if (h(s) >= 0.0) {
      lo = prev;
      hi = s;
      break;
    }
    prev = s;
  }
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (h(mid) >= 0.0 ? hi : lo) = mid;
  }
  return walk.point(h(lo) == 0.0 ? lo : hi);
}

std::vector<double> naive_candidate_values(const Instance& inst) {
  require_vertex_locations(inst);
  const int n = inst.point_count();
  RootedIndex idx(inst.tree, 0);
  std::vector<Vertex> med(n);
  std::vector<double> values;
  for (int i = 0; i < n; ++i) {
    med[i] = median_with(inst, idx, i);
    values.push_back(ed(inst, idx, med[i], i));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto path = tree_path(idx, med[i], med[j]);
      auto h = [&](Vertex v) { return ed(inst, idx, v, i) - ed(inst, idx, v, j); };
      if (h(path.front()) > 0.0 || h(path.back()) < 0.0) {
        values.push_back(0.0);
        continue;
      }
      std::optional<double> value;
      for (std::size_t k = 0; k + 1 < path.size() && !value; ++k) {
        double ha = h(path[k]), hb = h(path[k + 1]);
        if (ha <= 0.0 && hb >= 0.0) {
          double len = inst.tree.edge(inst.tree.find_edge(path[k], path[k + 1])).length;
          double off = hb == ha ? 0.0 : std::clamp(-ha / (hb - ha) * len, 0.0, len);
          value = ed(inst, idx, TreePoint::on_edge(inst.tree, path[k], path[k + 1], off), i);
        }
      }
      values.push_back(value ? *value : ed(inst, idx, path.front(), i));
    }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

double naive_kcenter(const Instance& inst, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  for (double lambda : naive_candidate_values(inst)) {
    try {
      if (static_cast<int>(naive_greedy_cover(inst, lambda).size()) <= k) return lambda;
    } catch (const InfeasibleError&) {
    }
  }
  throw std::logic_error("no candidate value is feasible");
}

}  // namespace ucover::oracle
