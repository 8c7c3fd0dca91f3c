#include "ucover/decomposition.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ucover {

Piece Piece::induced(const Tree& tree, const std::vector<Vertex>& vertices,
                     const std::vector<Vertex>& open_vertices,
                     const std::vector<Vertex>& connectors) {
  Piece p;
  p.verts = vertices;
  std::vector<int> local(tree.vertex_count(), -1);
  for (int k = 0; k < static_cast<int>(vertices.size()); ++k) local[vertices[k]] = k;
  p.adj.resize(vertices.size());
  p.closed.assign(vertices.size(), 1);
  for (int k = 0; k < static_cast<int>(vertices.size()); ++k)
    for (const auto& inc : tree.neighbors(vertices[k]))
      if (local[inc.to] >= 0) p.adj[k].push_back(local[inc.to]);
  for (Vertex o : open_vertices) p.closed[local[o]] = 0;
  p.connectors = connectors;
  return p;
}

int Piece::local_of(Vertex v) const {
  auto it = std::find(verts.begin(), verts.end(), v);
  return it == verts.end() ? -1 : static_cast<int>(it - verts.begin());
}

long long piece_weight(const Piece& piece, const std::vector<int>& load) {
  long long w = 0;
  for (std::size_t k = 0; k < piece.verts.size(); ++k)
    if (piece.closed[k]) w += load[piece.verts[k]];
  return w;
}

namespace {

long long local_weight(const Piece& p, int k, const std::vector<int>& load) {
  return p.closed[k] ? load[p.verts[k]] : 0;
}

struct Component {
  std::vector<int> locals;
  long long weight = 0;
  Vertex min_vertex = 0;
};

// Components of the piece after deleting local vertex m, ordered by the
// neighbor of m they contain (neighbors sorted by vertex id).
std::vector<Component> components_without(const Piece& p, int m, const std::vector<int>& load) {
  std::vector<int> nbrs = p.adj[m];
  std::sort(nbrs.begin(), nbrs.end(), [&](int a, int b) { return p.verts[a] < p.verts[b]; });
  std::vector<char> seen(p.verts.size(), 0);
  seen[m] = 1;
  std::vector<Component> out;
  for (int s : nbrs) {
    Component c;
    c.min_vertex = p.verts[s];
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      c.locals.push_back(x);
      c.weight += local_weight(p, x, load);
      c.min_vertex = std::min(c.min_vertex, p.verts[x]);
      for (int y : p.adj[x])
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
    }
    out.push_back(std::move(c));
  }
  return out;
}

// Sub-piece on the given locals; `m_closed` overrides the closed flag of
// local m (which must be among the locals).
Piece extract(const Piece& p, const std::vector<int>& locals, int m, bool m_closed,
              std::vector<Vertex> connectors) {
  std::vector<int> remap(p.verts.size(), -1);
  std::vector<int> order = locals;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return p.verts[a] < p.verts[b]; });
  Piece out;
  for (int k = 0; k < static_cast<int>(order.size()); ++k) {
    remap[order[k]] = k;
    out.verts.push_back(p.verts[order[k]]);
    out.closed.push_back(order[k] == m ? (m_closed ? 1 : 0) : p.closed[order[k]]);
  }
  out.adj.resize(order.size());
  for (int k = 0; k < static_cast<int>(order.size()); ++k)
    for (int y : p.adj[order[k]])
      if (remap[y] >= 0) out.adj[k].push_back(remap[y]);
  std::sort(connectors.begin(), connectors.end());
  connectors.erase(std::unique(connectors.begin(), connectors.end()), connectors.end());
  out.connectors = std::move(connectors);
  return out;
}

// Splits at local m into one part per group. Components are pre-assigned
// through `group_of`; unassigned ones (-1) go to the lightest group in
// decreasing weight order. m's own locations join the lightest group.
std::vector<Piece> split_groups(const Piece& p, int m, int groups, std::vector<Component> comps,
                                std::vector<int> group_of,
                                const std::vector<std::vector<Vertex>>& extra_connectors) {
  std::vector<long long> gw(groups, 0);
  for (std::size_t c = 0; c < comps.size(); ++c)
    if (group_of[c] >= 0) gw[group_of[c]] += comps[c].weight;
  std::vector<int> free;
  for (std::size_t c = 0; c < comps.size(); ++c)
    if (group_of[c] < 0) free.push_back(static_cast<int>(c));
  std::stable_sort(free.begin(), free.end(),
                   [&](int a, int b) { return comps[a].weight > comps[b].weight; });
  auto lightest = [&] {
    return static_cast<int>(std::min_element(gw.begin(), gw.end()) - gw.begin());
  };
  for (int c : free) {
    int g = lightest();
    group_of[c] = g;
    gw[g] += comps[c].weight;
  }
  int m_group = p.closed[m] ? lightest() : -1;

  std::vector<Piece> parts;
  const Vertex mv = p.verts[m];
  for (int g = 0; g < groups; ++g) {
    std::vector<int> locals{m};
    for (std::size_t c = 0; c < comps.size(); ++c)
      if (group_of[c] == g)
        locals.insert(locals.end(), comps[c].locals.begin(), comps[c].locals.end());
    std::vector<Vertex> conn = extra_connectors[g];
    conn.push_back(mv);
    parts.push_back(extract(p, locals, m, m_group == g, std::move(conn)));
  }
  return parts;
}

bool contains(const Piece& p, const Component& c, Vertex v) {
  for (int x : c.locals)
    if (p.verts[x] == v) return true;
  return false;
}

// Vertex lying on all three pairwise paths between a, b and c.
int median_of_three(const Piece& p, int a, int b, int c) {
  std::vector<int> parent(p.verts.size(), -2);
  std::vector<int> stack{a};
  parent[a] = -1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : p.adj[x])
      if (parent[y] == -2) {
        parent[y] = x;
        stack.push_back(y);
      }
  }
  std::vector<char> on_ab(p.verts.size(), 0);
  for (int x = b; x != -1; x = parent[x]) on_ab[x] = 1;
  int x = c;
  while (!on_ab[x]) x = parent[x];
  return x;
}

// Splits a part with three connectors into parts with at most two.
std::vector<Piece> reduce_connectors(const Piece& p, const std::vector<int>& load) {
  int a = p.local_of(p.connectors[0]);
  int b = p.local_of(p.connectors[1]);
  int c = p.local_of(p.connectors[2]);
  int m = median_of_three(p, a, b, c);
  std::vector<Vertex> others;
  for (Vertex y : p.connectors)
    if (y != p.verts[m]) others.push_back(y);
  auto comps = components_without(p, m, load);
  std::vector<int> group_of(comps.size(), -1);
  std::vector<std::vector<Vertex>> extra(others.size());
  for (std::size_t g = 0; g < others.size(); ++g) {
    extra[g].push_back(others[g]);
    for (std::size_t k = 0; k < comps.size(); ++k)
      if (contains(p, comps[k], others[g])) group_of[k] = static_cast<int>(g);
  }
  return split_groups(p, m, static_cast<int>(others.size()), std::move(comps), std::move(group_of),
                      extra);
}

}  // namespace

Vertex find_centroid(const Piece& piece, const std::vector<int>& load) {
  const int n = static_cast<int>(piece.verts.size());
  if (piece.edge_count() < 2)
    throw std::invalid_argument("centroid needs a piece with at least two edges");
  std::vector<int> order, parent(n, -2);
  order.reserve(n);
  parent[0] = -1;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    order.push_back(x);
    for (int y : piece.adj[x])
      if (parent[y] == -2) {
        parent[y] = x;
        stack.push_back(y);
      }
  }
  std::vector<long long> sub(n, 0), heaviest(n, 0);
  for (int k = n - 1; k >= 0; --k) {
    int x = order[k];
    sub[x] += local_weight(piece, x, load);
    if (parent[x] >= 0) {
      sub[parent[x]] += sub[x];
      heaviest[parent[x]] = std::max(heaviest[parent[x]], sub[x]);
    }
  }
  const long long total = sub[order[0]];
  Vertex best = kNoVertex;
  long long best_load = 0;
  for (int x = 0; x < n; ++x) {
    if (piece.adj[x].size() < 2) continue;
    long long worst = std::max(heaviest[x], total - sub[x]);
    if (best == kNoVertex || worst < best_load || (worst == best_load && piece.verts[x] < best)) {
      best = piece.verts[x];
      best_load = worst;
    }
  }
  return best;
}

std::vector<Piece> split_at(const Piece& piece, Vertex v, const std::vector<int>& load) {
  int m = piece.local_of(v);
  if (m < 0) throw std::invalid_argument("split vertex not in piece");
  auto comps = components_without(piece, m, load);
  if (comps.size() < 2) throw std::invalid_argument("split vertex is a leaf of the piece");
  // Heaviest component seeds the first part, the next heaviest the second.
  std::vector<int> idx(comps.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return comps[a].weight > comps[b].weight; });
  std::vector<int> group_of(comps.size(), -1);
  group_of[idx[0]] = 0;
  group_of[idx[1]] = 1;
  std::vector<std::vector<Vertex>> extra(2);
  auto parts = split_groups(piece, m, 2, comps, group_of, extra);
  // Hand the piece's connectors to the part that holds them.
  for (auto& part : parts) {
    std::vector<Vertex> conn{v};
    for (Vertex y : piece.connectors)
      if (y != v && std::binary_search(part.verts.begin(), part.verts.end(), y)) conn.push_back(y);
    std::sort(conn.begin(), conn.end());
    part.connectors = std::move(conn);
  }
  return parts;
}

bool DecompNode::contains_vertex(Vertex v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

bool DecompNode::is_closed(Vertex v) const {
  return contains_vertex(v) && std::find(open.begin(), open.end(), v) == open.end();
}

int DecompTree::height() const {
  int h = 0;
  for (const auto& node : nodes) h = std::max(h, node.depth);
  return h;
}

std::vector<int> DecompTree::path_to(int leaf) const {
  std::vector<int> path;
  for (int x = leaf; x >= 0; x = nodes[x].parent) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

class Builder {
 public:
  Builder(const Tree& tree, std::vector<int> load) : tree_(tree), load_(std::move(load)) {
    dt_.leaf_of_vertex.assign(tree.vertex_count(), -1);
    dt_.leaf_of_edge.assign(tree.edge_count(), -1);
  }

  DecompTree run() {
    std::vector<Vertex> all(tree_.vertex_count());
    std::iota(all.begin(), all.end(), 0);
    dt_.root = build(Piece::induced(tree_, all, {}, {}), -1, 0);
    return std::move(dt_);
  }

 private:
  int new_node(const Piece& p, int parent, int depth) {
    DecompNode node;
    node.parent = parent;
    node.depth = depth;
    node.connectors = p.connectors;
    node.vertices = p.verts;
    for (std::size_t k = 0; k < p.verts.size(); ++k)
      if (!p.closed[k]) node.open.push_back(p.verts[k]);
    node.size = piece_weight(p, load_);
    dt_.nodes.push_back(std::move(node));
    return static_cast<int>(dt_.nodes.size()) - 1;
  }

  int vertex_leaf(Vertex v, int parent, int depth, std::vector<Vertex> conn) {
    Piece p;
    p.verts = {v};
    p.adj = {{}};
    p.closed = {1};
    p.connectors = std::move(conn);
    int id = new_node(p, parent, depth);
    dt_.nodes[id].kind = DecompNode::Kind::kLeafVertex;
    dt_.nodes[id].leaf_vertex = v;
    dt_.leaf_of_vertex[v] = id;
    return id;
  }

  int edge_leaf(Vertex a, Vertex b, int parent, int depth) {
    Piece p;
    p.verts = {std::min(a, b), std::max(a, b)};
    p.adj = {{1}, {0}};
    p.closed = {0, 0};
    p.connectors = p.verts;
    int id = new_node(p, parent, depth);
    dt_.nodes[id].kind = DecompNode::Kind::kLeafEdge;
    dt_.nodes[id].leaf_edge = tree_.find_edge(a, b);
    dt_.leaf_of_edge[dt_.nodes[id].leaf_edge] = id;
    return id;
  }

  int build(Piece piece, int parent, int depth) {
    if (piece.verts.size() == 1)
      return vertex_leaf(piece.verts[0], parent, depth, piece.connectors);
    if (piece.edge_count() == 1) {
      const Vertex a = piece.verts[0], b = piece.verts[1];
      if (!piece.closed[0] && !piece.closed[1]) return edge_leaf(a, b, parent, depth);
      int id = new_node(piece, parent, depth);
      std::vector<int> kids;
      if (piece.closed[0]) kids.push_back(vertex_leaf(a, id, depth + 1, {a}));
      kids.push_back(edge_leaf(a, b, id, depth + 1));
      if (piece.closed[1]) kids.push_back(vertex_leaf(b, id, depth + 1, {b}));
      dt_.nodes[id].children = kids;
      return id;
    }
    int id = new_node(piece, parent, depth);
    Vertex v = find_centroid(piece, load_);
    dt_.nodes[id].centroid = v;
    std::vector<Piece> parts;
    for (auto& part : split_at(piece, v, load_)) {
      if (part.connectors.size() > 2) {
        for (auto& sub : reduce_connectors(part, load_)) parts.push_back(std::move(sub));
      } else {
        parts.push_back(std::move(part));
      }
    }
    piece = Piece();  // release before recursing
    std::vector<int> kids;
    for (auto& part : parts) kids.push_back(build(std::move(part), id, depth + 1));
    dt_.nodes[id].children = kids;
    return id;
  }

  const Tree& tree_;
  std::vector<int> load_;
  DecompTree dt_;
};

}  // namespace

std::vector<int> location_load(const Instance& inst) {
  std::vector<int> load(inst.tree.vertex_count(), 0);
  for (const auto& p : inst.points)
    for (const auto& loc : p.locations) {
      if (!loc.point.is_vertex())
        throw std::invalid_argument("decomposition expects vertex locations");
      ++load[loc.point.u];
    }
  return load;
}

DecompTree decompose(const Instance& inst) { return Builder(inst.tree, location_load(inst)).run(); }

std::vector<Vertex> outside_subtree(const DecompTree& dt, const Tree& tree, int node, Vertex y) {
  const DecompNode& mu = dt.nodes.at(node);
  if (std::find(mu.connectors.begin(), mu.connectors.end(), y) == mu.connectors.end())
    throw std::invalid_argument("vertex is not a connector of the node");
  std::vector<Vertex> out;
  if (!mu.is_closed(y)) out.push_back(y);
  std::vector<char> seen(tree.vertex_count(), 0);
  seen[y] = 1;
  std::vector<Vertex> stack;
  for (const auto& inc : tree.neighbors(y))
    if (!mu.contains_vertex(inc.to)) {
      seen[inc.to] = 1;
      stack.push_back(inc.to);
    }
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    out.push_back(x);
    for (const auto& inc : tree.neighbors(x))
      if (!seen[inc.to]) {
        seen[inc.to] = 1;
        stack.push_back(inc.to);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string decomposition_to_dot(const DecompTree& dt) {
  std::ostringstream s;
  s << "digraph decomposition {\n  node [shape=box, fontsize=10];\n";
  for (std::size_t k = 0; k < dt.nodes.size(); ++k) {
    const auto& n = dt.nodes[k];
    s << "  n" << k << " [label=\"";
    if (n.kind == DecompNode::Kind::kLeafVertex)
      s << "vertex " << n.leaf_vertex;
    else if (n.kind == DecompNode::Kind::kLeafEdge)
      s << "open edge " << n.vertices[0] << "-" << n.vertices[1];
    else
      s << "split at " << n.centroid << "\\n|T|=" << n.size;
    s << "\\nconnectors:";
    for (Vertex y : n.connectors) s << " " << y;
    s << "\"];\n";
    for (int c : n.children) s << "  n" << k << " -> n" << c << ";\n";
  }
  s << "}\n";
  return s.str();
}

}  // namespace ucover
