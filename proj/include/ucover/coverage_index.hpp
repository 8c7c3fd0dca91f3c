#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "ucover/dist_oracle.hpp"

namespace ucover {

// Coverage test shared by every fast structure and the solver. Tight
// centers come out of a different chain of floating-point operations than
// the coverage checks, so a relative slack of 1e-11 keeps the two in
// agreement; at lambda = 0 the test is exact.
inline bool within(double ed, double lambda) { return ed <= lambda + 1e-11 * lambda; }

// Deletion-only reporting of the lines y = c + m x lying above a query
// point. A balanced tree over the lines sorted by slope keeps, per node,
// the upper envelope of the lines alive when it was last built. Deleting
// only lowers the true maximum, so a stale envelope can only cause extra
// descents; a node is rebuilt once more than half of the lines it was
// built from have died.
class DeletionEnvelope {
 public:
  DeletionEnvelope() = default;
  DeletionEnvelope(const std::vector<double>& slope, const std::vector<double>& intercept);

  int size() const { return static_cast<int>(pos_of_.size()); }
  int alive_count() const { return nodes_.empty() ? 0 : nodes_[0].alive; }
  bool alive(int id) const { return alive_[pos_of_[id]] != 0; }
  void erase(int id);

  // Calls visit(id) on every alive line whose value at x is at least y,
  // up to a small pad that errs towards visiting; visit returns true to
  // have the line deleted.
  template <class Visit>
  void report_above(double x, double y, Visit&& visit) {
    if (!nodes_.empty()) descend(0, x, y, visit);
  }

 private:
  static constexpr int kBucket = 8;
  struct Node {
    int lo = 0, hi = 0;  // position range
    int alive = 0;
    int built = 0;  // alive lines at the last build
    int dead_since = 0;
    double max_c = 0.0, max_m = 0.0;
    std::vector<int> hull;       // positions, by slope
    std::vector<double> breaks;  // x where hull[k+1] takes over
  };

  int build(int lo, int hi);
  void rebuild(Node& node);
  double envelope_at(const Node& node, double x) const;
  double value(int pos, double x) const { return c_[pos] + m_[pos] * x; }

  template <class Visit>
  void descend(int k, double x, double y, Visit& visit) {
    Node& node = nodes_[k];
    if (node.alive == 0) return;
    if (2 * node.dead_since > node.built) rebuild(node);
    const double pad = 1e-9 * (1.0 + std::abs(y) + node.max_c + node.max_m * std::abs(x));
    if (envelope_at(node, x) < y - pad) return;
    if (left_[k] < 0) {
      for (int p = node.lo; p < node.hi; ++p)
        if (alive_[p] && value(p, x) >= y - pad && visit(id_of_[p])) erase(id_of_[p]);
      return;
    }
    descend(left_[k], x, y, visit);
    descend(right_[k], x, y, visit);
  }

  std::vector<double> m_, c_;  // by position
  std::vector<int> id_of_, pos_of_;
  std::vector<char> alive_;
  std::vector<Node> nodes_;
  std::vector<int> left_, right_;
};

// Reports, for a point x of the tree, every active uncertain point with
// Ed(x, P_i) <= lambda, deactivating each as it is reported.
class CoverageIndex {
 public:
  CoverageIndex(const DistOracle& a3, double lambda);

  double lambda() const { return lambda_; }
  std::vector<int> coverage_report(const TreePoint& x);
  // No-op when i is already inactive.
  void deactivate(int i);
  bool active(int i) const { return active_[i] != 0; }
  int active_count() const { return active_count_; }

  // Entries still alive across all node structures and vertex lists.
  std::size_t alive_entries() const;
  // Entries (node structures plus own-vertex lists) held by point i.
  std::size_t entries_of(int i) const { return node_list_[i].size() + own_refs_[i].size(); }
  // Number of decomposition nodes listing point i.
  std::size_t node_list_size(int i) const { return node_list_[i].size(); }

 private:
  enum class Kind { kEmpty, kEnvelope, kThreshold };
  struct NodeIndex {
    Kind kind = Kind::kEmpty;
    double span = 0.0;              // distance between the two connectors
    DeletionEnvelope envelope;      // two connectors, positive weight
    std::vector<int> free_entries;  // two connectors, zero weight
    std::size_t free_head = 0;
    std::vector<int> by_threshold;  // one connector, descending threshold
    std::vector<double> threshold;
    std::size_t head = 0;
    std::vector<int> envelope_entry;  // envelope line -> entry
    std::vector<int> entry_line;      // entry -> envelope line or -1
    std::vector<char> entry_alive;
  };
  struct OwnList {
    std::vector<std::pair<double, int>> by_ed;  // (Ed, point), ascending
    std::vector<char> alive;
    std::size_t head = 0;
  };

  void report_node(int node, const TreePoint& x, std::vector<int>& out);
  void report_own(Vertex v, std::vector<int>& out);
  void kill_entry(int node, int entry);

  const DistOracle& a3_;
  double lambda_;
  std::vector<NodeIndex> nodes_;
  std::vector<OwnList> own_;
  std::vector<std::vector<std::pair<int, int>>> node_list_;    // per point: (node, entry)
  std::vector<std::vector<std::pair<Vertex, int>>> own_refs_;  // per point: (vertex, slot)
  std::vector<char> active_;
  int active_count_ = 0;
};

}  // namespace ucover
