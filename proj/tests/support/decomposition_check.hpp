#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ucover/decomposition.hpp"

namespace ucover::testing {

// Node-count bound per location used by the checks below.
inline constexpr double kNodesPerLocation = 6.0;

// Structural checks on a decomposition of a vertex-located instance.
// Returns one message per violation.
inline std::vector<std::string> check_decomposition(const DecompTree& dt, const Instance& inst) {
  std::vector<std::string> bad;
  const Tree& tree = inst.tree;
  const long long m = static_cast<long long>(inst.total_locations());
  auto node_msg = [](int x, const std::string& what) {
    return "node " + std::to_string(x) + ": " + what;
  };

  if (static_cast<double>(dt.nodes.size()) > kNodesPerLocation * std::max(1LL, m))
    bad.push_back("node count " + std::to_string(dt.nodes.size()) + " exceeds bound");
  const double height_bound = 4.0 * std::log2(static_cast<double>(std::max(1LL, m))) + 8.0;
  if (dt.height() > height_bound)
    bad.push_back("height " + std::to_string(dt.height()) + " exceeds bound");
  if (dt.nodes[dt.root].size != m) bad.push_back("root size differs from M");

  std::vector<int> closed_in(tree.vertex_count(), 0), edge_in(tree.edge_count(), 0);
  for (int x = 0; x < static_cast<int>(dt.nodes.size()); ++x) {
    const DecompNode& nd = dt.nodes[x];
    if (nd.connectors.size() > 2) bad.push_back(node_msg(x, "more than two connectors"));
    for (Vertex c : nd.connectors)
      if (!nd.contains_vertex(c)) bad.push_back(node_msg(x, "connector outside node"));
    for (Vertex o : nd.open)
      if (std::find(nd.connectors.begin(), nd.connectors.end(), o) == nd.connectors.end())
        bad.push_back(node_msg(x, "open vertex is not a connector"));

    if (nd.kind == DecompNode::Kind::kLeafVertex) {
      ++closed_in[nd.leaf_vertex];
      if (!nd.children.empty()) bad.push_back(node_msg(x, "leaf with children"));
    } else if (nd.kind == DecompNode::Kind::kLeafEdge) {
      ++edge_in[nd.leaf_edge];
      if (nd.size != 0) bad.push_back(node_msg(x, "edge leaf holds locations"));
    } else {
      if (nd.children.size() < 2 || nd.children.size() > 4)
        bad.push_back(node_msg(x, std::to_string(nd.children.size()) + " children"));
      long long sum = 0;
      for (int c : nd.children) {
        const DecompNode& ch = dt.nodes[c];
        sum += ch.size;
        if (ch.parent != x || ch.depth != nd.depth + 1)
          bad.push_back(node_msg(c, "bad parent link"));
        for (Vertex v : ch.vertices)
          if (!nd.contains_vertex(v)) bad.push_back(node_msg(c, "vertex outside parent"));
        const long long cap = (2 * nd.size + 2) / 3 + 2;
        if (ch.size > cap)
          bad.push_back(node_msg(
              c, "size " + std::to_string(ch.size) + " over parent " + std::to_string(nd.size)));
      }
      if (sum != nd.size) bad.push_back(node_msg(x, "children sizes do not add up"));
    }
  }
  for (Vertex v = 0; v < tree.vertex_count(); ++v)
    if (closed_in[v] != 1)
      bad.push_back("vertex " + std::to_string(v) + " in " + std::to_string(closed_in[v]) +
                    " closed leaves");
  for (int e = 0; e < tree.edge_count(); ++e)
    if (edge_in[e] != 1)
      bad.push_back("edge " + std::to_string(e) + " in " + std::to_string(edge_in[e]) + " leaves");
  return bad;
}

}  // namespace ucover::testing
