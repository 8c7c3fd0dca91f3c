#include "ucover/coverage_index.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace ucover {

DeletionEnvelope::DeletionEnvelope(const std::vector<double>& slope,
                                   const std::vector<double>& intercept) {
  const int n = static_cast<int>(slope.size());
  if (static_cast<int>(intercept.size()) != n) throw std::invalid_argument("line arrays differ");
  id_of_.resize(n);
  std::iota(id_of_.begin(), id_of_.end(), 0);
  // Increasing slope; among equal slopes the higher line first.
  std::sort(id_of_.begin(), id_of_.end(), [&](int a, int b) {
    if (slope[a] != slope[b]) return slope[a] < slope[b];
    return intercept[a] > intercept[b];
  });
  pos_of_.resize(n);
  m_.resize(n);
  c_.resize(n);
  for (int p = 0; p < n; ++p) {
    pos_of_[id_of_[p]] = p;
    m_[p] = slope[id_of_[p]];
    c_[p] = intercept[id_of_[p]];
  }
  alive_.assign(n, 1);
  if (n > 0) build(0, n);
}

int DeletionEnvelope::build(int lo, int hi) {
  const int k = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  left_.push_back(-1);
  right_.push_back(-1);
  if (hi - lo > kBucket) {
    const int mid = lo + (hi - lo) / 2;
    const int l = build(lo, mid);
    const int r = build(mid, hi);
    left_[k] = l;
    right_[k] = r;
  }
  Node& node = nodes_[k];
  node.lo = lo;
  node.hi = hi;
  node.alive = hi - lo;
  for (int p = lo; p < hi; ++p) {
    node.max_c = std::max(node.max_c, std::abs(c_[p]));
    node.max_m = std::max(node.max_m, std::abs(m_[p]));
  }
  rebuild(node);
  return k;
}

void DeletionEnvelope::rebuild(Node& node) {
  node.hull.clear();
  node.breaks.clear();
  auto cross = [&](int a, int b) { return (c_[a] - c_[b]) / (m_[b] - m_[a]); };
  for (int p = node.lo; p < node.hi; ++p) {
    if (!alive_[p]) continue;
    if (!node.hull.empty() && m_[node.hull.back()] == m_[p]) continue;  // lower twin
    while (node.hull.size() >= 2) {
      int a = node.hull[node.hull.size() - 2], b = node.hull.back();
      if (cross(a, p) <= cross(a, b)) {
        node.hull.pop_back();
        node.breaks.pop_back();
      } else {
        break;
      }
    }
    if (!node.hull.empty()) node.breaks.push_back(cross(node.hull.back(), p));
    node.hull.push_back(p);
  }
  node.built = node.alive;
  node.dead_since = 0;
}

double DeletionEnvelope::envelope_at(const Node& node, double x) const {
  if (node.hull.empty()) return -std::numeric_limits<double>::infinity();
  std::size_t k = std::upper_bound(node.breaks.begin(), node.breaks.end(), x) - node.breaks.begin();
  return value(node.hull[k], x);
}

void DeletionEnvelope::erase(int id) {
  const int p = pos_of_[id];
  if (!alive_[p]) return;
  alive_[p] = 0;
  int k = 0;
  while (k >= 0) {
    Node& node = nodes_[k];
    --node.alive;
    ++node.dead_since;
    if (left_[k] < 0) break;
    k = p < nodes_[left_[k]].hi ? left_[k] : right_[k];
  }
}

CoverageIndex::CoverageIndex(const DistOracle& a3, double lambda) : a3_(a3), lambda_(lambda) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be non-negative");
  const Instance& inst = a3.instance();
  const DecompTree& dt = a3.decomposition();
  const int n = inst.point_count();
  const double limit = lambda + 1e-11 * lambda;
  nodes_.resize(dt.nodes.size());
  node_list_.resize(n);
  own_refs_.resize(n);

  for (int node = 0; node < static_cast<int>(dt.nodes.size()); ++node) {
    const auto& list = a3.outside(node);
    if (list.empty()) continue;
    NodeIndex& ni = nodes_[node];
    const auto& conn = dt.nodes[node].connectors;
    ni.entry_alive.assign(list.size(), 1);
    for (std::size_t e = 0; e < list.size(); ++e)
      node_list_[list[e].point].emplace_back(node, static_cast<int>(e));
    if (conn.size() == 2) {
      ni.kind = Kind::kEnvelope;
      ni.span = a3.index().dist(conn[0], conn[1]);
      ni.entry_line.assign(list.size(), -1);
      std::vector<double> slope, intercept;
      for (std::size_t e = 0; e < list.size(); ++e) {
        const OutsideInfo& info = list[e];
        const double w = inst.points[info.point].weight;
        if (w <= 0.0) {
          ni.free_entries.push_back(static_cast<int>(e));
          continue;
        }
        // Ed <= limit  <=>  a <= K - g b, with a the distance from x to the
        // connector path and b the position along it measured from conn[0].
        const double s = info.mass[0] + info.mass[1];
        const double k = (limit / w - info.mass[1] * ni.span - info.dist[0] - info.dist[1]) / s;
        const double g = (info.mass[0] - info.mass[1]) / s;
        ni.entry_line[e] = static_cast<int>(slope.size());
        ni.envelope_entry.push_back(static_cast<int>(e));
        slope.push_back(-g);
        intercept.push_back(k);
      }
      ni.envelope = DeletionEnvelope(slope, intercept);
    } else if (conn.size() == 1) {
      ni.kind = Kind::kThreshold;
      std::vector<double> tau(list.size());
      for (std::size_t e = 0; e < list.size(); ++e) {
        const OutsideInfo& info = list[e];
        const double w = inst.points[info.point].weight;
        if (w <= 0.0) {
          tau[e] = std::numeric_limits<double>::infinity();
        } else if (info.mass[0] > 0.0) {
          tau[e] = (limit / w - info.dist[0]) / info.mass[0];
        } else {
          tau[e] = info.dist[0] <= limit / w ? std::numeric_limits<double>::infinity()
                                             : -std::numeric_limits<double>::infinity();
        }
      }
      ni.by_threshold.resize(list.size());
      std::iota(ni.by_threshold.begin(), ni.by_threshold.end(), 0);
      std::stable_sort(ni.by_threshold.begin(), ni.by_threshold.end(),
                       [&](int a, int b) { return tau[a] > tau[b]; });
      for (int e : ni.by_threshold) ni.threshold.push_back(tau[e]);
    } else {
      throw std::logic_error("entries at a node without connectors");
    }
  }

  own_.resize(inst.tree.vertex_count());
  for (Vertex v = 0; v < inst.tree.vertex_count(); ++v) {
    OwnList& ol = own_[v];
    for (auto [i, ed] : a3.own(v)) ol.by_ed.emplace_back(ed, i);
    std::sort(ol.by_ed.begin(), ol.by_ed.end());
    ol.alive.assign(ol.by_ed.size(), 1);
    for (std::size_t k = 0; k < ol.by_ed.size(); ++k)
      own_refs_[ol.by_ed[k].second].emplace_back(v, static_cast<int>(k));
  }
  active_.assign(n, 1);
  active_count_ = n;
}

void CoverageIndex::kill_entry(int node, int entry) {
  NodeIndex& ni = nodes_[node];
  if (!ni.entry_alive[entry]) return;
  ni.entry_alive[entry] = 0;
  if (ni.kind == Kind::kEnvelope && ni.entry_line[entry] >= 0)
    ni.envelope.erase(ni.entry_line[entry]);
}

void CoverageIndex::deactivate(int i) {
  if (i < 0 || i >= static_cast<int>(active_.size()))
    throw std::invalid_argument("point index out of range");
  if (!active_[i]) return;
  active_[i] = 0;
  --active_count_;
  for (auto [node, entry] : node_list_[i]) kill_entry(node, entry);
  for (auto [v, slot] : own_refs_[i]) own_[v].alive[slot] = 0;
}

void CoverageIndex::report_node(int node, const TreePoint& x, std::vector<int>& out) {
  NodeIndex& ni = nodes_[node];
  const auto& list = a3_.outside(node);
  const auto& points = a3_.instance().points;
  double d0, d1;
  a3_.connector_dists(node, x, d0, d1);
  auto take = [&](int entry) {
    const OutsideInfo& info = list[entry];
    if (!ni.entry_alive[entry] || !active_[info.point]) return;
    if (within(outside_ed(info, points[info.point].weight, d0, d1), lambda_)) {
      out.push_back(info.point);
      deactivate(info.point);
    }
  };
  if (ni.kind == Kind::kEnvelope) {
    for (; ni.free_head < ni.free_entries.size(); ++ni.free_head)
      take(ni.free_entries[ni.free_head]);
    const double a = 0.5 * (d0 + d1 - ni.span);
    const double b = 0.5 * (d0 - d1 + ni.span);
    ni.envelope.report_above(b, a, [&](int line) {
      take(ni.envelope_entry[line]);
      return false;  // deactivation already erased the line
    });
  } else if (ni.kind == Kind::kThreshold) {
    const std::size_t n = ni.by_threshold.size();
    for (std::size_t k = ni.head; k < n; ++k) {
      const double pad = 1e-9 * (1.0 + d0 + std::abs(ni.threshold[k]));
      if (ni.threshold[k] < d0 - pad) break;
      take(ni.by_threshold[k]);
    }
    while (ni.head < n && !ni.entry_alive[ni.by_threshold[ni.head]]) ++ni.head;
  }
}

void CoverageIndex::report_own(Vertex v, std::vector<int>& out) {
  OwnList& ol = own_[v];
  const std::size_t n = ol.by_ed.size();
  std::size_t k = ol.head;
  for (; k < n && within(ol.by_ed[k].first, lambda_); ++k) {
    if (!ol.alive[k]) continue;
    const int i = ol.by_ed[k].second;
    out.push_back(i);
    deactivate(i);
  }
  ol.head = k;
}

std::vector<int> CoverageIndex::coverage_report(const TreePoint& x) {
  std::vector<int> out;
  const DecompTree& dt = a3_.decomposition();
  for (int node = a3_.leaf_of(x); node >= 0; node = dt.nodes[node].parent)
    if (nodes_[node].kind != Kind::kEmpty) report_node(node, x, out);
  if (x.is_vertex()) report_own(x.u, out);
  return out;
}

std::size_t CoverageIndex::alive_entries() const {
  std::size_t total = 0;
  for (const auto& ni : nodes_)
    total += static_cast<std::size_t>(std::count(ni.entry_alive.begin(), ni.entry_alive.end(), 1));
  for (const auto& ol : own_)
    total += static_cast<std::size_t>(std::count(ol.alive.begin(), ol.alive.end(), 1));
  return total;
}

}  // namespace ucover
