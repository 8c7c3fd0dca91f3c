#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ucover {

using Vertex = int;
inline constexpr Vertex kNoVertex = -1;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double length = 0.0;
};

class TreeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Weighted free tree. Vertex ids are 0..vertex_count()-1; edges are stored
// with u < v.
class Tree {
 public:
  Tree() = default;
  explicit Tree(int vertex_count);

  // Throws TreeError on self loops, bad ids, duplicate edges or
  // non-positive lengths.
  int add_edge(Vertex u, Vertex v, double length);

  // Throws TreeError unless the edges form a spanning tree.
  void check_valid() const;

  int vertex_count() const { return static_cast<int>(adjacency_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_[id]; }

  struct Incidence {
    Vertex to;
    int edge;
  };
  const std::vector<Incidence>& neighbors(Vertex v) const { return adjacency_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }

  // Edge id of {u, v} or -1.
  int find_edge(Vertex u, Vertex v) const;

  bool valid_vertex(Vertex v) const { return v >= 0 && v < vertex_count(); }

  // Text format: vertex count, then one "u v length" line per edge.
  static Tree read_text(std::istream& in);
  void write_text(std::ostream& out) const;

 private:
  static std::uint64_t key(Vertex u, Vertex v);

  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::unordered_map<std::uint64_t, int> edge_index_;
};

// A point on a tree: either a vertex (u == v, offset 0) or a point in the
// interior of edge (u, v), u < v, at distance `offset` from u.
struct TreePoint {
  Vertex u = 0;
  Vertex v = 0;
  double offset = 0.0;

  static TreePoint at_vertex(Vertex x) { return TreePoint{x, x, 0.0}; }

  // Point at distance `offset` from `from` along edge {from, to}; collapses
  // to vertex form at either end. Throws TreeError if the edge is missing
  // or the offset is outside [0, length].
  static TreePoint on_edge(const Tree& tree, Vertex from, Vertex to, double offset);

  bool is_vertex() const { return u == v; }
  Vertex vertex() const { return u; }

  friend bool operator==(const TreePoint& a, const TreePoint& b) {
    return a.u == b.u && a.v == b.v && a.offset == b.offset;
  }
};

std::string to_string(const TreePoint& p);

// Rooted view of a tree with O(1) LCA (Euler tour + sparse table) and
// O(log n) level ancestor (jump pointers).
class RootedIndex {
 public:
  RootedIndex() = default;
  RootedIndex(const Tree& tree, Vertex root);

  const Tree& tree() const { return *tree_; }
  Vertex root() const { return root_; }
  Vertex parent(Vertex v) const { return parent_[v]; }
  // Length of the edge between v and its parent (0 for the root).
  double parent_length(Vertex v) const { return parent_len_[v]; }
  int depth_hops(Vertex v) const { return depth_[v]; }
  double dist_to_root(Vertex v) const { return root_dist_[v]; }
  // Vertices in DFS preorder; children are visited by increasing id.
  const std::vector<Vertex>& preorder() const { return preorder_; }

  Vertex lca(Vertex u, Vertex v) const;
  Vertex level_ancestor(Vertex v, int depth) const;
  bool is_ancestor(Vertex a, Vertex v) const { return tin_[a] <= tin_[v] && tout_[v] <= tout_[a]; }

  double dist(Vertex u, Vertex v) const;
  double dist(const TreePoint& p, Vertex v) const;
  double dist(const TreePoint& p, const TreePoint& q) const;

  // Child endpoint of the edge that holds p (p itself for vertices).
  Vertex lower_endpoint(const TreePoint& p) const;
  // Distance from p up to lower_endpoint(p)'s parent side; for a vertex,
  // 0. Equivalently dist_to_root(p).
  double dist_to_root(const TreePoint& p) const;

  // True iff p lies on the path from the root to v.
  bool is_on_root_path(const TreePoint& p, Vertex v) const;

  // The point on the path from v towards the root at distance h above v.
  // h must lie in [0, dist_to_root(v)].
  TreePoint point_above(Vertex v, double h) const;

 private:
  void check_vertex(Vertex v) const;

  const Tree* tree_ = nullptr;
  Vertex root_ = 0;
  std::vector<Vertex> parent_;
  std::vector<double> parent_len_;
  std::vector<int> depth_;
  std::vector<double> root_dist_;
  std::vector<Vertex> preorder_;
  std::vector<int> tin_, tout_;
  std::vector<int> first_;
  std::vector<Vertex> euler_;
  std::vector<std::vector<Vertex>> sparse_;
  std::vector<int> log2_;
  std::vector<std::vector<Vertex>> jump_;
};

}  // namespace ucover
