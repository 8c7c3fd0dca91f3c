#include "ucover/cover_solver.hpp"

#include <sstream>
#include <stdexcept>

#include "ucover/coverage_index.hpp"
#include "ucover/decomposition.hpp"
#include "ucover/io.hpp"

namespace ucover {

Prepared::Prepared(const Instance& inst) : original_(inst) {
  require_valid(original_);
  vc_ = reduce(original_);
  dt_ = decompose(vc_.reduced);
  mt_ = build_median_tree(vc_.reduced, compute_medians(vc_.reduced, dt_));
  rooted_ = RootedIndex(vc_.reduced.tree, mt_.root);
  a3_ = std::make_unique<DistOracle>(vc_.reduced, dt_);
}

RangeStatus::RangeStatus(int n) {
  for (int k = 0; k < n; ++k) ranks_.insert(ranks_.end(), k);
}

bool RangeStatus::any(int lo, int hi) const {
  auto it = ranks_.lower_bound(lo);
  return it != ranks_.end() && *it <= hi;
}

CoverSolution solve_cover(const Prepared& prep, double lambda, const CoverageTrace& trace) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be non-negative");
  const MedianTree& mt = prep.median_tree();
  const RootedIndex& rooted = prep.rooted();
  const int n = prep.point_count();

  // A2 checks every median first, so infeasibility surfaces before any work.
  CandidateIndex a2(prep.oracle(), mt, rooted, lambda);
  CoverageIndex a1(prep.oracle(), lambda);
  RangeStatus status(n);

  CoverSolution sol;
  sol.lambda = lambda;
  sol.covered_by.assign(n, -1);
  auto place = [&](const TreePoint& c) {
    const int id = static_cast<int>(sol.reduced_centers.size());
    sol.reduced_centers.push_back(c);
    ++sol.stats.coverage_reports;
    const std::vector<int> covered = a1.coverage_report(c);
    if (covered.empty()) throw std::logic_error("center at " + to_string(c) + " covers nothing");
    for (int i : covered) {
      sol.covered_by[i] = id;
      a2.remove(i);
      status.erase(mt.rank[i]);
      ++sol.stats.removals;
    }
    if (trace) trace(c, covered);
  };

  for (Vertex v : mt.postorder) {
    const int lo = mt.range_lo[v], hi = mt.range_hi[v];
    ++sol.stats.range_status_queries;
    if (!status.any(lo, hi)) continue;
    if (v == mt.root) {
      place(TreePoint::at_vertex(v));
      continue;
    }
#ifndef NDEBUG
    for (int k = lo; k <= hi; ++k) {
      const int i = mt.order[k];
      if (a1.active(i) && !within(prep.oracle().query_ed(TreePoint::at_vertex(v), i), lambda))
        throw std::logic_error("active median below v is not covered at v");
    }
#endif
    ++sol.stats.candidate_queries;
    const Candidate c = a2.query(lo, hi);
    if (c.kind != Candidate::kPoint)
      throw std::logic_error("no candidate for a range with active medians");
    // A candidate on the path from the parent up needs no center yet.
    if (!rooted.is_on_root_path(c.point, mt.parent[v])) place(c.point);
  }
  if (a1.active_count() != 0 || !status.empty())
    throw std::logic_error("walk finished with uncovered points");
  sol.centers = map_back(prep.vc(), sol.reduced_centers);
  return sol;
}

CoverSolution solve_cover(const Instance& inst, double lambda) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be non-negative");
  Prepared prep(inst);
  return solve_cover(prep, lambda);
}

bool verify_solution(const Instance& inst, double lambda, const std::vector<TreePoint>& centers) {
  RootedIndex idx(inst.tree, 0);
  for (int i = 0; i < inst.point_count(); ++i) {
    bool ok = false;
    for (const auto& c : centers)
      if (expected_distance_naive(inst, idx, c, i) <= lambda + 1e-9 * std::max(1.0, lambda)) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  return true;
}

nlohmann::json cover_to_json(const CoverSolution& sol) {
  nlohmann::json j;
  j["lambda"] = sol.lambda;
  j["centers"] = nlohmann::json::array();
  for (const auto& c : sol.centers) j["centers"].push_back(point_to_json(c));
  j["covered_by"] = sol.covered_by;
  return j;
}

std::string cover_to_dot(const Prepared& prep, const CoverSolution& sol) {
  const Tree& tree = prep.original().tree;
  std::vector<std::string> vertex_marks(tree.vertex_count());
  std::vector<std::pair<TreePoint, std::string>> edge_marks;
  auto mark = [&](const TreePoint& p, const std::string& label) {
    if (p.is_vertex()) {
      vertex_marks[p.u] += (vertex_marks[p.u].empty() ? "" : ",") + label;
    } else {
      edge_marks.emplace_back(p, label);
    }
  };
  const MedianTree& mt = prep.median_tree();
  for (int i = 0; i < prep.point_count(); ++i)
    mark(prep.vc().vertex_origin[mt.median[i]], "m" + std::to_string(i));
  for (std::size_t c = 0; c < sol.centers.size(); ++c)
    mark(sol.centers[c], "C" + std::to_string(c));

  std::ostringstream out;
  out << "graph cover {\n  node [shape=circle];\n";
  for (Vertex v = 0; v < tree.vertex_count(); ++v) {
    out << "  v" << v << " [label=\"" << v;
    if (!vertex_marks[v].empty()) out << "\\n" << vertex_marks[v];
    out << "\"";
    if (vertex_marks[v].find('C') != std::string::npos) out << ", style=filled, fillcolor=gold";
    out << "];\n";
  }
  for (const Edge& e : tree.edges())
    out << "  v" << e.u << " -- v" << e.v << " [label=\"" << e.length << "\"];\n";
  for (std::size_t k = 0; k < edge_marks.size(); ++k) {
    const auto& [p, label] = edge_marks[k];
    const bool center = label[0] == 'C';
    out << "  x" << k << " [shape=" << (center ? "box, style=filled, fillcolor=gold" : "box")
        << ", label=\"" << label << "\\n"
        << p.u << "-" << p.v << " @" << p.offset << "\"];\n";
    out << "  x" << k << " -- v" << p.u << " [style=dashed];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace ucover
