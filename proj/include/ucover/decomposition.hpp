#pragma once

#include <string>
#include <vector>

#include "ucover/instance.hpp"

namespace ucover {

// A connected piece of the tree. Open vertices belong to the piece's edges
// but their locations belong elsewhere; every open vertex is a connector.
struct Piece {
  std::vector<Vertex> verts;          // local index -> vertex
  std::vector<std::vector<int>> adj;  // local adjacency
  std::vector<char> closed;           // per local index
  std::vector<Vertex> connectors;

  // Builds the piece of `tree` induced by `vertices`.
  static Piece induced(const Tree& tree, const std::vector<Vertex>& vertices,
                       const std::vector<Vertex>& open_vertices,
                       const std::vector<Vertex>& connectors);
  int local_of(Vertex v) const;
  int edge_count() const { return static_cast<int>(verts.size()) - 1; }
};

// Total number of locations held at closed vertices of the piece.
long long piece_weight(const Piece& piece, const std::vector<int>& load);

// A vertex of piece-degree >= 2 minimizing the heaviest component left after
// removing it; smallest id on ties. Throws std::invalid_argument when the
// piece has fewer than two edges.
Vertex find_centroid(const Piece& piece, const std::vector<int>& load);

// Splits the piece at `v` into two parts sharing only v. v stays closed in
// exactly one part when it is closed in the piece; connectors of the piece
// go with the part that contains them and v becomes a connector of both.
std::vector<Piece> split_at(const Piece& piece, Vertex v, const std::vector<int>& load);

struct DecompNode {
  enum class Kind { kInternal, kLeafVertex, kLeafEdge };
  Kind kind = Kind::kInternal;
  int parent = -1;
  int depth = 0;
  std::vector<int> children;
  std::vector<Vertex> connectors;  // at most two
  Vertex centroid = kNoVertex;     // internal nodes: first split vertex
  std::vector<Vertex> vertices;    // sorted, open vertices included
  std::vector<Vertex> open;        // vertices whose locations live elsewhere
  long long size = 0;              // locations at closed vertices
  Vertex leaf_vertex = kNoVertex;  // kLeafVertex
  int leaf_edge = -1;              // kLeafEdge

  bool is_leaf() const { return kind != Kind::kInternal; }
  bool contains_vertex(Vertex v) const;  // open or closed
  bool is_closed(Vertex v) const;
};

struct DecompTree {
  std::vector<DecompNode> nodes;
  int root = 0;
  std::vector<int> leaf_of_vertex;
  std::vector<int> leaf_of_edge;

  int height() const;
  // Root-to-leaf node path.
  std::vector<int> path_to(int leaf) const;
};

// Builds the decomposition; sizes count locations, so `inst` may hold
// several locations per vertex. Expects every location at a vertex.
DecompTree decompose(const Instance& inst);

// Vertices of the part of the tree reached from node `node` through its
// connector y (y itself included when y is open in the node). Throws if y is
// not a connector.
std::vector<Vertex> outside_subtree(const DecompTree& dt, const Tree& tree, int node, Vertex y);

// Graphviz rendering of the decomposition tree.
std::string decomposition_to_dot(const DecompTree& dt);

// Per-vertex location counts of a vertex-located instance.
std::vector<int> location_load(const Instance& inst);

}  // namespace ucover
