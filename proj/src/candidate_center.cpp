#include "ucover/candidate_center.hpp"

#include <cmath>
#include <stdexcept>

#include "ucover/coverage_index.hpp"

namespace ucover {

CandidateIndex::CandidateIndex(const DistOracle& a3, const MedianTree& mt,
                               const RootedIndex& rooted, double lambda)
    : a3_(a3), mt_(mt), rooted_(rooted), lambda_(lambda) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be non-negative");
  if (rooted.root() != mt.root)
    throw std::invalid_argument("index must be rooted at the median root");
  const Instance& inst = a3.instance();
  const int n = inst.point_count();
  for (int i = 0; i < n; ++i) {
    const double best = a3.query_ed(TreePoint::at_vertex(mt.median[i]), i);
    if (!within(best, lambda)) throw InfeasibleError(i, best, lambda);
  }

  std::vector<std::vector<int>> at(inst.tree.vertex_count());
  for (int i = 0; i < n; ++i) at[mt.median[i]].push_back(i);
  q_.resize(n);
  std::vector<Vertex> path;
  std::vector<std::size_t> next;
  if (n > 0) {
    path.push_back(mt.root);
    next.push_back(0);
  }
  while (!path.empty()) {
    const Vertex v = path.back();
    if (next.back() == 0)
      for (int i : at[v]) q_[i] = solve_q(i, path);
    if (next.back() < mt.children[v].size()) {
      const Vertex c = mt.children[v][next.back()++];
      path.push_back(c);
      next.push_back(0);
    } else {
      path.pop_back();
      next.pop_back();
    }
  }

  while (size_ < n) size_ *= 2;
  active_.assign(n, 1);
  state_.assign(2 * size_, Candidate::unconstrained());
  lca_.assign(2 * size_, kNoVertex);
  for (int k = 0; k < n; ++k) {
    state_[size_ + k] = Candidate::at(q_[mt.order[k]]);
    lca_[size_ + k] = mt.median_of_rank(k);
  }
  for (int node = size_ - 1; node >= 1; --node) {
    const Vertex a = lca_[2 * node], b = lca_[2 * node + 1];
    lca_[node] = a == kNoVertex ? b : b == kNoVertex ? a : rooted.lca(a, b);
    pull(node);
  }
}

TreePoint CandidateIndex::solve_q(int i, const std::vector<Vertex>& path) const {
  auto fits = [&](const TreePoint& x) { return within(a3_.query_ed(x, i), lambda_); };
  if (fits(TreePoint::at_vertex(path[0]))) return TreePoint::at_vertex(path[0]);
  // Ed only falls going down the path; path[lo] fails, path[hi] fits.
  std::size_t lo = 0, hi = path.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (fits(TreePoint::at_vertex(path[mid])) ? hi : lo) = mid;
  }
  const Tree& tree = a3_.instance().tree;
  const Vertex x = path[hi], p = path[lo];
  const int e = tree.find_edge(x, p);
  const double len = tree.edge(e).length;
  const EdgeLinearForm form = a3_.edge_linear_form(e, i);
  const bool from_u = tree.edge(e).u == x;
  const double ex = form.at(from_u ? 0.0 : len);
  const double ep = form.at(from_u ? len : 0.0);
  double h = ep > ex ? (lambda_ - ex) / (ep - ex) * len : 0.0;
  if (!(h > 0.0)) h = 0.0;
  if (h >= len) h = std::nextafter(len, 0.0);
  TreePoint c = TreePoint::on_edge(tree, x, p, h);
  if (!fits(c)) {
    // Rounding pushed the crossing just past lambda; pull it back down.
    double good = 0.0, bad = h;
    for (int it = 0; it < 100 && good < bad; ++it) {
      const double mid = 0.5 * (good + bad);
      if (mid <= good || mid >= bad) break;
      (fits(TreePoint::on_edge(tree, x, p, mid)) ? good : bad) = mid;
    }
    c = TreePoint::on_edge(tree, x, p, good);
  }
  return c;
}

bool CandidateIndex::deeper(const TreePoint& a, const TreePoint& b) const {
  const Vertex la = rooted_.lower_endpoint(a), lb = rooted_.lower_endpoint(b);
  if (la != lb) return rooted_.is_ancestor(lb, la);
  auto height = [&](const TreePoint& p, Vertex low) {
    if (p.is_vertex()) return 0.0;
    return low == p.u ? p.offset : rooted_.parent_length(low) - p.offset;
  };
  return height(a, la) < height(b, lb);
}

Candidate CandidateIndex::combine(const Candidate& a, const Candidate& b, Vertex v) const {
  auto admit = [&](Candidate acc, const Candidate& x) {
    if (x.kind == Candidate::kUnconstrained || acc.kind == Candidate::kInfeasible) return acc;
    if (x.kind == Candidate::kInfeasible) return x;
    if (v != kNoVertex && !rooted_.is_on_root_path(x.point, v)) return Candidate::infeasible();
    if (acc.kind == Candidate::kUnconstrained || deeper(x.point, acc.point)) return x;
    return acc;
  };
  return admit(admit(Candidate::unconstrained(), a), b);
}

void CandidateIndex::pull(int node) {
  state_[node] = combine(state_[2 * node], state_[2 * node + 1], lca_[node]);
}

Vertex CandidateIndex::range_lca(int lo, int hi) const {
  return rooted_.lca(mt_.median_of_rank(lo), mt_.median_of_rank(hi));
}

Candidate CandidateIndex::query(int lo, int hi) const {
  const int n = static_cast<int>(q_.size());
  if (lo < 0 || hi >= n || lo > hi) throw std::invalid_argument("bad rank range");
  const Vertex v = range_lca(lo, hi);
  Candidate acc = Candidate::unconstrained();
  for (int l = lo + size_, r = hi + size_ + 1; l < r; l /= 2, r /= 2) {
    if (l & 1) acc = combine(acc, state_[l++], v);
    if (r & 1) acc = combine(acc, state_[--r], v);
  }
  return acc;
}

void CandidateIndex::remove(int i) {
  if (i < 0 || i >= static_cast<int>(q_.size()))
    throw std::invalid_argument("point index out of range");
  if (!active_[i]) return;
  active_[i] = 0;
  int node = size_ + mt_.rank[i];
  state_[node] = Candidate::unconstrained();
  for (node /= 2; node >= 1; node /= 2) pull(node);
}

bool CandidateIndex::consistent() const {
  const int n = static_cast<int>(q_.size());
  for (int node = 1; node < size_; ++node) {
    int lo = node, hi = node;
    while (lo < size_) {
      lo *= 2;
      hi = 2 * hi + 1;
    }
    Candidate acc = Candidate::unconstrained();
    for (int leaf = lo; leaf <= hi && leaf - size_ < n; ++leaf) {
      const int i = mt_.order[leaf - size_];
      if (active_[i]) acc = combine(acc, Candidate::at(q_[i]), lca_[node]);
    }
    const Candidate& got = state_[node];
    if (got.kind != acc.kind) return false;
    if (got.kind == Candidate::kPoint && !(got.point == acc.point)) return false;
  }
  return true;
}

}  // namespace ucover
