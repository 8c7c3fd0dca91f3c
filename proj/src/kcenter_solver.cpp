#include "ucover/kcenter_solver.hpp"

#include <algorithm>
#include <stdexcept>

#include "ucover/io.hpp"

namespace ucover {

namespace {

// The crossing of Ed_i - Ed_j inside edge {x, y}, where the difference is
// negative at x and non-negative at y.
BalancePoint solve_edge(const Prepared& prep, int i, int j, Vertex x, Vertex y) {
  const Tree& tree = prep.reduced().tree;
  const int e = tree.find_edge(x, y);
  const Edge& edge = tree.edge(e);
  const EdgeLinearForm fi = prep.oracle().edge_linear_form(e, i);
  const EdgeLinearForm fj = prep.oracle().edge_linear_form(e, j);
  const double ds = fi.slope - fj.slope;
  const double at_y = edge.u == y ? 0.0 : edge.length;
  double t = at_y;
  if (ds != 0.0) t = std::clamp((fj.intercept - fi.intercept) / ds, 0.0, edge.length);
  const TreePoint c = TreePoint::on_edge(tree, edge.u, edge.v, t);
  return {c, std::max(fi.at(t), fj.at(t))};
}

}  // namespace

std::optional<BalancePoint> compute_cij(const Prepared& prep, int i, int j) {
  const DistOracle& a3 = prep.oracle();
  const RootedIndex& idx = prep.rooted();
  const MedianTree& mt = prep.median_tree();
  const Vertex pi = mt.median[i], pj = mt.median[j];
  auto ed = [&](Vertex v, int p) { return a3.query_ed(TreePoint::at_vertex(v), p); };
  if (i == j) return BalancePoint{TreePoint::at_vertex(pi), ed(pi, i)};
  if (ed(pi, i) > ed(pi, j) || ed(pj, j) > ed(pj, i)) return std::nullopt;

  // h grows from p_i* to p_j*: Ed_i rises and Ed_j falls along the path.
  auto h = [&](Vertex v) { return ed(v, i) - ed(v, j); };
  if (h(pi) >= 0.0) return BalancePoint{TreePoint::at_vertex(pi), ed(pi, i)};
  const Vertex v = idx.lca(pi, pj);
  const int dv = idx.depth_hops(v);
  if (h(v) >= 0.0) {
    // Deepest ancestor of p_i* with h >= 0; depth dv qualifies.
    int lo = dv, hi = idx.depth_hops(pi);  // h(lo) >= 0 > h(hi)
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      (h(idx.level_ancestor(pi, mid)) >= 0.0 ? lo : hi) = mid;
    }
    return solve_edge(prep, i, j, idx.level_ancestor(pi, hi), idx.level_ancestor(pi, lo));
  }
  // Shallowest vertex below v towards p_j* with h >= 0; p_j* qualifies.
  int lo = dv, hi = idx.depth_hops(pj);  // h(lo) < 0 <= h(hi)
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (h(idx.level_ancestor(pj, mid)) >= 0.0 ? hi : lo) = mid;
  }
  return solve_edge(prep, i, j, idx.level_ancestor(pj, lo), idx.level_ancestor(pj, hi));
}

std::vector<double> build_candidates(const Prepared& prep) {
  const int n = prep.point_count();
  std::vector<double> s;
  s.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
  for (int i = 0; i < n; ++i) s.push_back(compute_cij(prep, i, i)->value);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto c = compute_cij(prep, i, j);
      s.push_back(c ? c->value : 0.0);
    }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

KCenterSolution solve_kcenter(const Prepared& prep, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  const std::vector<double> s = build_candidates(prep);
  KCenterSolution sol;
  sol.k = k;
  sol.candidate_count = s.size();
  std::optional<CoverSolution> best;
  auto feasible = [&](double lambda) -> std::optional<CoverSolution> {
    ++sol.probes;
    try {
      CoverSolution c = solve_cover(prep, lambda);
      if (static_cast<int>(c.centers.size()) <= k) return c;
    } catch (const InfeasibleError&) {
    }
    return std::nullopt;
  };
  // s[hi] is feasible, s[lo] is not (lo = -1 stands for "below s[0]").
  int lo = -1, hi = static_cast<int>(s.size()) - 1;
  best = feasible(s[hi]);
  if (!best) throw std::logic_error("largest candidate value is infeasible");
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (auto c = feasible(s[mid])) {
      hi = mid;
      best = std::move(c);
    } else {
      lo = mid;
    }
  }
  sol.lambda_opt = s[hi];
  sol.centers = best->centers;
  return sol;
}

KCenterSolution solve_kcenter(const Instance& inst, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  Prepared prep(inst);
  return solve_kcenter(prep, k);
}

nlohmann::json kcenter_to_json(const KCenterSolution& sol) {
  nlohmann::json j;
  j["k"] = sol.k;
  j["lambda_opt"] = sol.lambda_opt;
  j["centers"] = nlohmann::json::array();
  for (const auto& c : sol.centers) j["centers"].push_back(point_to_json(c));
  return j;
}

}  // namespace ucover
