#include "ucover/tree.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ucover {

Tree::Tree(int vertex_count) {
  if (vertex_count < 1) throw TreeError("tree needs at least one vertex");
  adjacency_.resize(vertex_count);
}

std::uint64_t Tree::key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

int Tree::add_edge(Vertex u, Vertex v, double length) {
  if (!valid_vertex(u) || !valid_vertex(v)) throw TreeError("edge references vertex out of range");
  if (u == v) throw TreeError("self loop at vertex " + std::to_string(u));
  if (!(length > 0.0) || !std::isfinite(length))
    throw TreeError("edge length must be positive and finite");
  if (u > v) std::swap(u, v);
  auto [it, inserted] = edge_index_.emplace(key(u, v), edge_count());
  if (!inserted) throw TreeError("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
  edges_.push_back(Edge{u, v, length});
  adjacency_[u].push_back({v, it->second});
  adjacency_[v].push_back({u, it->second});
  return it->second;
}

int Tree::find_edge(Vertex u, Vertex v) const {
  if (!valid_vertex(u) || !valid_vertex(v)) return -1;
  auto it = edge_index_.find(key(u, v));
  return it == edge_index_.end() ? -1 : it->second;
}

void Tree::check_valid() const {
  if (adjacency_.empty()) throw TreeError("tree needs at least one vertex");
  if (edge_count() != vertex_count() - 1) throw TreeError("edge count must be vertex count - 1");
  std::vector<char> seen(vertex_count(), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    for (const auto& inc : adjacency_[x]) {
      if (!seen[inc.to]) {
        seen[inc.to] = 1;
        ++reached;
        stack.push_back(inc.to);
      }
    }
  }
  if (reached != vertex_count()) throw TreeError("tree is not connected");
}

Tree Tree::read_text(std::istream& in) {
  int t = 0;
  if (!(in >> t) || t < 1) throw TreeError("bad vertex count");
  Tree tree(t);
  for (int k = 0; k + 1 < t; ++k) {
    Vertex u, v;
    double len;
    if (!(in >> u >> v >> len)) throw TreeError("truncated edge list");
    tree.add_edge(u, v, len);
  }
  tree.check_valid();
  return tree;
}

void Tree::write_text(std::ostream& out) const {
  std::vector<Edge> sorted = edges_;
  std::sort(sorted.begin(), sorted.end(),
            [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
  std::ostringstream buf;
  buf.precision(17);
  buf << vertex_count() << '\n';
  for (const auto& e : sorted) buf << e.u << ' ' << e.v << ' ' << e.length << '\n';
  out << buf.str();
}

TreePoint TreePoint::on_edge(const Tree& tree, Vertex from, Vertex to, double offset) {
  if (from == to) {
    if (!tree.valid_vertex(from) || offset != 0.0) throw TreeError("bad vertex point");
    return at_vertex(from);
  }
  int id = tree.find_edge(from, to);
  if (id < 0) throw TreeError("no edge " + std::to_string(from) + "-" + std::to_string(to));
  double len = tree.edge(id).length;
  if (!(offset >= 0.0 && offset <= len))
    throw TreeError("offset outside edge " + std::to_string(from) + "-" + std::to_string(to));
  if (offset == 0.0) return at_vertex(from);
  if (offset == len) return at_vertex(to);
  if (from < to) return TreePoint{from, to, offset};
  return TreePoint{to, from, len - offset};
}

std::string to_string(const TreePoint& p) {
  std::ostringstream s;
  s.precision(17);
  if (p.is_vertex())
    s << "v" << p.u;
  else
    s << "(" << p.u << "," << p.v << ")@" << p.offset;
  return s.str();
}

RootedIndex::RootedIndex(const Tree& tree, Vertex root) : tree_(&tree), root_(root) {
  const int n = tree.vertex_count();
  if (root < 0 || root >= n) throw TreeError("invalid root id");
  parent_.assign(n, kNoVertex);
  parent_len_.assign(n, 0.0);
  depth_.assign(n, 0);
  root_dist_.assign(n, 0.0);
  tin_.assign(n, 0);
  tout_.assign(n, 0);
  first_.assign(n, 0);
  preorder_.reserve(n);
  euler_.reserve(2 * n);

  // Iterative DFS; children visited by increasing id.
  std::vector<std::vector<Vertex>> kids(n);
  struct Frame {
    Vertex v;
    std::size_t next;
  };
  std::vector<Frame> stack;
  stack.push_back({root, 0});
  parent_[root] = kNoVertex;
  int clock = 0;
  std::vector<char> seen(n, 0);
  seen[root] = 1;
  while (!stack.empty()) {
    Frame& f = stack.back();
    Vertex v = f.v;
    if (f.next == 0) {
      for (const auto& inc : tree.neighbors(v))
        if (!seen[inc.to]) kids[v].push_back(inc.to);
      std::sort(kids[v].begin(), kids[v].end());
      for (Vertex c : kids[v]) seen[c] = 1;
      tin_[v] = clock++;
      preorder_.push_back(v);
      first_[v] = static_cast<int>(euler_.size());
    }
    euler_.push_back(v);
    if (f.next < kids[v].size()) {
      Vertex c = kids[v][f.next++];
      parent_[c] = v;
      parent_len_[c] = tree.edge(tree.find_edge(v, c)).length;
      depth_[c] = depth_[v] + 1;
      root_dist_[c] = root_dist_[v] + parent_len_[c];
      stack.push_back({c, 0});
    } else {
      tout_[v] = clock;
      stack.pop_back();
    }
  }
  if (static_cast<int>(preorder_.size()) != n) throw TreeError("tree is not connected");

  const int m = static_cast<int>(euler_.size());
  log2_.assign(m + 1, 0);
  for (int k = 2; k <= m; ++k) log2_[k] = log2_[k / 2] + 1;
  sparse_.assign(log2_[m] + 1, {});
  sparse_[0] = euler_;
  for (int j = 1; j < static_cast<int>(sparse_.size()); ++j) {
    const int span = 1 << j;
    sparse_[j].resize(m - span + 1);
    for (int k = 0; k + span <= m; ++k) {
      Vertex a = sparse_[j - 1][k], b = sparse_[j - 1][k + span / 2];
      sparse_[j][k] = depth_[a] <= depth_[b] ? a : b;
    }
  }

  int levels = 1;
  while ((1 << levels) < n) ++levels;
  jump_.assign(levels, std::vector<Vertex>(n));
  for (int v = 0; v < n; ++v) jump_[0][v] = parent_[v] == kNoVertex ? v : parent_[v];
  for (int j = 1; j < levels; ++j)
    for (int v = 0; v < n; ++v) jump_[j][v] = jump_[j - 1][jump_[j - 1][v]];
}

void RootedIndex::check_vertex(Vertex v) const {
  if (v < 0 || v >= static_cast<int>(parent_.size()))
    throw TreeError("vertex id out of range: " + std::to_string(v));
}

Vertex RootedIndex::lca(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  int a = first_[u], b = first_[v];
  if (a > b) std::swap(a, b);
  int j = log2_[b - a + 1];
  Vertex x = sparse_[j][a], y = sparse_[j][b - (1 << j) + 1];
  return depth_[x] <= depth_[y] ? x : y;
}

Vertex RootedIndex::level_ancestor(Vertex v, int depth) const {
  check_vertex(v);
  if (depth < 0 || depth > depth_[v]) throw TreeError("level ancestor depth out of range");
  int up = depth_[v] - depth;
  for (int j = 0; up > 0; ++j, up >>= 1)
    if (up & 1) v = jump_[j][v];
  return v;
}

double RootedIndex::dist(Vertex u, Vertex v) const {
  return root_dist_[u] + root_dist_[v] - 2.0 * root_dist_[lca(u, v)];
}

Vertex RootedIndex::lower_endpoint(const TreePoint& p) const {
  if (p.is_vertex()) return p.u;
  return parent_[p.v] == p.u ? p.v : p.u;
}

double RootedIndex::dist_to_root(const TreePoint& p) const {
  if (p.is_vertex()) return root_dist_[p.u];
  // offset is measured from p.u
  return parent_[p.v] == p.u ? root_dist_[p.u] + p.offset
                             : root_dist_[p.v] + (parent_len_[p.u] - p.offset);
}

double RootedIndex::dist(const TreePoint& p, Vertex v) const {
  if (p.is_vertex()) return dist(p.u, v);
  double len = tree_->edge(tree_->find_edge(p.u, p.v)).length;
  return std::min(p.offset + dist(p.u, v), (len - p.offset) + dist(p.v, v));
}

double RootedIndex::dist(const TreePoint& p, const TreePoint& q) const {
  if (q.is_vertex()) return dist(p, q.u);
  if (p.is_vertex()) return dist(q, p.u);
  if (p.u == q.u && p.v == q.v) return std::abs(p.offset - q.offset);
  double len = tree_->edge(tree_->find_edge(q.u, q.v)).length;
  return std::min(dist(p, q.u) + q.offset, dist(p, q.v) + (len - q.offset));
}

bool RootedIndex::is_on_root_path(const TreePoint& p, Vertex v) const {
  check_vertex(v);
  return is_ancestor(lower_endpoint(p), v);
}

TreePoint RootedIndex::point_above(Vertex v, double h) const {
  check_vertex(v);
  if (h <= 0.0) return TreePoint::at_vertex(v);
  const double target = root_dist_[v] - h;
  if (target <= 0.0) return TreePoint::at_vertex(root_);
  // Highest ancestor a of v with root_dist(a) >= target.
  Vertex a = v;
  for (int j = static_cast<int>(jump_.size()) - 1; j >= 0; --j) {
    Vertex b = jump_[j][a];
    if (root_dist_[b] >= target) a = b;
  }
  if (root_dist_[a] == target || a == root_) return TreePoint::at_vertex(a);
  Vertex p = parent_[a];
  double up = std::min(root_dist_[a] - target, parent_len_[a]);
  return TreePoint::on_edge(*tree_, a, p, up);
}

}  // namespace ucover
