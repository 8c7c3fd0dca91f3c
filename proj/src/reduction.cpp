#include "ucover/reduction.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "ucover/io.hpp"

namespace ucover {

namespace {

// Intermediate tree with every location at a vertex.
struct SplitTree {
  struct Arc {
    int to;
    VCInstance::Piece piece;  // oriented from the owning vertex to `to`
  };
  std::vector<std::vector<Arc>> adj;
  std::vector<TreePoint> origin;
  std::vector<int> load;  // number of locations held
};

VCInstance::Piece reversed(VCInstance::Piece p) {
  std::swap(p.from, p.to);
  return p;
}

}  // namespace

VCInstance reduce(const Instance& inst) {
  const Tree& tree = inst.tree;
  const int t = tree.vertex_count();
  SplitTree st;
  st.adj.resize(t);
  st.load.assign(t, 0);
  for (Vertex v = 0; v < t; ++v) st.origin.push_back(TreePoint::at_vertex(v));

  // Interior offsets per edge, sorted and deduplicated.
  std::vector<std::vector<double>> cuts(tree.edge_count());
  for (const auto& p : inst.points)
    for (const auto& loc : p.locations)
      if (!loc.point.is_vertex())
        cuts[tree.find_edge(loc.point.u, loc.point.v)].push_back(loc.point.offset);
  std::vector<std::vector<int>> cut_vertex(tree.edge_count());
  auto link = [&](int a, int b, VCInstance::Piece piece) {
    st.adj[a].push_back({b, piece});
    st.adj[b].push_back({a, reversed(piece)});
  };
  for (int e = 0; e < tree.edge_count(); ++e) {
    auto& c = cuts[e];
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    const Edge& ed = tree.edge(e);
    int prev = ed.u;
    double prev_off = 0.0;
    for (double off : c) {
      int x = static_cast<int>(st.adj.size());
      st.adj.emplace_back();
      st.load.push_back(0);
      st.origin.push_back(TreePoint{ed.u, ed.v, off});
      cut_vertex[e].push_back(x);
      link(prev, x, {e, prev_off, off});
      prev = x;
      prev_off = off;
    }
    link(prev, ed.v, {e, prev_off, ed.length});
  }

  auto vertex_of = [&](const TreePoint& x) {
    if (x.is_vertex()) return x.u;
    int e = tree.find_edge(x.u, x.v);
    const auto& c = cuts[e];
    auto it = std::lower_bound(c.begin(), c.end(), x.offset);
    return cut_vertex[e][it - c.begin()];
  };
  std::vector<std::vector<int>> loc_vertex(inst.point_count());
  for (int i = 0; i < inst.point_count(); ++i)
    for (const auto& loc : inst.points[i].locations) {
      int x = vertex_of(loc.point);
      loc_vertex[i].push_back(x);
      ++st.load[x];
    }

  // Prune empty leaves repeatedly.
  const int n1 = static_cast<int>(st.adj.size());
  std::vector<int> deg(n1);
  std::vector<char> removed(n1, 0);
  std::deque<int> queue;
  for (int x = 0; x < n1; ++x) {
    deg[x] = static_cast<int>(st.adj[x].size());
    if (deg[x] <= 1 && st.load[x] == 0) queue.push_back(x);
  }
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    if (removed[x]) continue;
    removed[x] = 1;
    for (const auto& a : st.adj[x])
      if (!removed[a.to] && --deg[a.to] <= 1 && st.load[a.to] == 0) queue.push_back(a.to);
  }

  // Contract empty degree-2 vertices; survivors keep their relative order.
  std::vector<int> new_id(n1, -1);
  VCInstance vc;
  vc.original = tree;
  int kept = 0;
  for (int x = 0; x < n1; ++x)
    if (!removed[x] && (st.load[x] > 0 || deg[x] != 2)) {
      new_id[x] = kept++;
      vc.vertex_origin.push_back(st.origin[x]);
    }
  Tree reduced(kept);
  for (int x = 0; x < n1; ++x) {
    if (new_id[x] < 0) continue;
    for (const auto& first : st.adj[x]) {
      if (removed[first.to]) continue;
      std::vector<VCInstance::Piece> chain{first.piece};
      int prev = x, cur = first.to;
      while (new_id[cur] < 0) {
        for (const auto& a : st.adj[cur])
          if (!removed[a.to] && a.to != prev) {
            chain.push_back(a.piece);
            prev = cur;
            cur = a.to;
            break;
          }
      }
      if (new_id[x] > new_id[cur]) continue;  // added from the other side
      double len = 0.0;
      for (const auto& p : chain) len += p.length();
      int id = reduced.add_edge(new_id[x], new_id[cur], len);
      if (id >= static_cast<int>(vc.edge_pieces.size())) vc.edge_pieces.resize(id + 1);
      vc.edge_pieces[id] = std::move(chain);
    }
  }

  vc.reduced.tree = std::move(reduced);
  vc.reduced.points.resize(inst.point_count());
  vc.location_origin.resize(inst.point_count());
  std::vector<char> held(kept, 0);
  for (int i = 0; i < inst.point_count(); ++i) {
    auto& rp = vc.reduced.points[i];
    rp.weight = inst.points[i].weight;
    for (std::size_t j = 0; j < inst.points[i].locations.size(); ++j) {
      int x = new_id[loc_vertex[i][j]];
      rp.locations.push_back({TreePoint::at_vertex(x), inst.points[i].locations[j].prob});
      vc.location_origin[i].push_back(static_cast<int>(j));
      held[x] = 1;
    }
  }
  // Dummies: empty survivors in increasing id; P_i takes up to m_i of them,
  // in index order.
  int i = 0, used = 0;
  for (int x = 0; x < kept; ++x) {
    if (held[x]) continue;
    while (i < inst.point_count() && used >= static_cast<int>(inst.points[i].locations.size())) {
      ++i;
      used = 0;
    }
    if (i >= inst.point_count()) throw std::logic_error("ran out of dummy owners");
    vc.reduced.points[i].locations.push_back({TreePoint::at_vertex(x), 0.0});
    vc.location_origin[i].push_back(-1);
    ++used;
  }
  return vc;
}

TreePoint map_back(const VCInstance& vc, const TreePoint& center) {
  const Tree& rt = vc.reduced.tree;
  if (center.is_vertex()) {
    if (!rt.valid_vertex(center.u)) throw TreeError("center is off the reduced tree");
    return vc.vertex_origin[center.u];
  }
  int e = rt.find_edge(center.u, center.v);
  if (e < 0) throw TreeError("center is off the reduced tree");
  double left = center.offset;
  const auto& pieces = vc.edge_pieces[e];
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const auto& p = pieces[k];
    if (left <= p.length() || k + 1 == pieces.size()) {
      left = std::min(left, p.length());
      double off = p.to > p.from ? p.from + left : p.from - left;
      const Edge& oe = vc.original.edge(p.edge);
      off = std::clamp(off, 0.0, oe.length);
      return TreePoint::on_edge(vc.original, oe.u, oe.v, off);
    }
    left -= p.length();
  }
  throw std::logic_error("reduced edge without pieces");
}

std::vector<TreePoint> map_back(const VCInstance& vc, const std::vector<TreePoint>& centers) {
  std::vector<TreePoint> out;
  out.reserve(centers.size());
  for (const auto& c : centers) out.push_back(map_back(vc, c));
  return out;
}

nlohmann::json reduction_to_json(const VCInstance& vc) {
  nlohmann::json j;
  j["instance"] = instance_to_json(vc.reduced);
  nlohmann::json origin = nlohmann::json::array();
  for (const auto& p : vc.vertex_origin) origin.push_back(point_to_json(p));
  j["vertex_origin"] = origin;
  nlohmann::json dummies = nlohmann::json::array();
  for (std::size_t i = 0; i < vc.location_origin.size(); ++i)
    for (std::size_t k = 0; k < vc.location_origin[i].size(); ++k)
      if (vc.location_origin[i][k] < 0) dummies.push_back({i, k});
  j["dummies"] = dummies;
  return j;
}

}  // namespace ucover
