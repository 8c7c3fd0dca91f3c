#include "check_suites.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "ucover/cover_solver.hpp"
#include "ucover/kcenter_solver.hpp"
#include "ucover/oracle.hpp"

namespace ucover::cli {

void OracleReport::add(std::string label, double structure, double oracle) {
  Comparison c;
  c.label = std::move(label);
  c.structure = structure;
  c.oracle = oracle;
  c.abs_dev = std::abs(structure - oracle);
  c.rel_dev = c.abs_dev / std::max(1.0, std::max(std::abs(structure), std::abs(oracle)));
  c.pass = c.rel_dev <= tolerance;
  comparisons.push_back(std::move(c));
}

int OracleReport::failures() const {
  return static_cast<int>(std::count_if(comparisons.begin(), comparisons.end(),
                                        [](const Comparison& c) { return !c.pass; }));
}

nlohmann::json OracleReport::summary(std::size_t max_listed) const {
  double max_abs = 0.0, max_rel = 0.0;
  nlohmann::json failed = nlohmann::json::array();
  for (const auto& c : comparisons) {
    max_abs = std::max(max_abs, c.abs_dev);
    max_rel = std::max(max_rel, c.rel_dev);
    if (!c.pass && failed.size() < max_listed)
      failed.push_back({{"label", c.label},
                        {"structure", c.structure},
                        {"oracle", c.oracle},
                        {"abs_dev", c.abs_dev},
                        {"rel_dev", c.rel_dev}});
  }
  return {{"suite", suite},         {"tolerance", tolerance}, {"comparisons", comparisons.size()},
          {"failures", failures()}, {"max_abs_dev", max_abs}, {"max_rel_dev", max_rel},
          {"failed", failed}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"median", "ed", "cover", "kcenter"};
  return names;
}

namespace {

std::string tag(std::uint64_t seed, const std::string& rest) {
  return "seed " + std::to_string(seed) + " " + rest;
}

double median_ed(const Instance& inst, const RootedIndex& idx, Vertex m, int i) {
  return expected_distance_naive(inst, idx, TreePoint::at_vertex(m), i);
}

void median_suite(OracleReport& rep, std::uint64_t seed) {
  Instance inst = generate_bounded(seed, 15, 120, true);
  Prepared prep(inst);
  RootedIndex idx(inst.tree, 0);
  for (int i = 0; i < inst.point_count(); ++i)
    rep.add(tag(seed, "point " + std::to_string(i)),
            median_ed(inst, idx, prep.median_tree().median[i], i),
            median_ed(inst, idx, oracle::naive_median(inst, i), i));
}

TreePoint random_point(const Tree& tree, std::mt19937_64& rng) {
  if (tree.edge_count() == 0 || uniform01(rng) < 0.3)
    return TreePoint::at_vertex(uniform_int(rng, 0, tree.vertex_count() - 1));
  const Edge& e = tree.edge(uniform_int(rng, 0, tree.edge_count() - 1));
  return TreePoint::on_edge(tree, e.u, e.v, uniform01(rng) * e.length);
}

void ed_suite(OracleReport& rep, std::uint64_t seed) {
  Instance inst = generate_bounded(seed, 15, 120, true);
  Prepared prep(inst);
  const Instance& red = prep.reduced();
  RootedIndex idx(red.tree, 0);
  std::mt19937_64 rng(seed);
  for (int q = 0; q < 200; ++q) {
    TreePoint x = random_point(red.tree, rng);
    int i = uniform_int(rng, 0, red.point_count() - 1);
    rep.add(tag(seed, to_string(x) + " point " + std::to_string(i)), prep.oracle().query_ed(x, i),
            expected_distance_naive(red, idx, x, i));
  }
}

// Covering range around the largest median value; about one in ten falls
// below it and must be infeasible.
double suite_lambda(const Instance& inst, std::mt19937_64& rng) {
  RootedIndex idx(inst.tree, 0);
  double top = 0.0;
  for (int i = 0; i < inst.point_count(); ++i)
    top = std::max(top, median_ed(inst, idx, oracle::naive_median(inst, i), i));
  const double u = uniform01(rng);
  if (u < 0.1) return top * 0.9;
  return top * (1.0 + 1.5 * u * u * u) + 1e-6;
}

// Center count, or -1 when infeasible.
template <class F>
double count_or_infeasible(F&& solve) {
  try {
    return static_cast<double>(solve());
  } catch (const InfeasibleError&) {
    return -1.0;
  }
}

void cover_suite(OracleReport& rep, std::uint64_t seed) {
  Instance inst = generate_bounded(seed, 12, 100, true);
  std::mt19937_64 rng(seed);
  const double lambda = suite_lambda(inst, rng);
  Prepared prep(inst);
  bool verified = true;
  double fast = count_or_infeasible([&] {
    auto sol = solve_cover(prep, lambda);
    verified = verify_solution(inst, lambda, sol.centers);
    return sol.centers.size();
  });
  double slow =
      count_or_infeasible([&] { return oracle::naive_greedy_cover(inst, lambda).size(); });
  rep.add(tag(seed, "count"), fast, slow);
  rep.add(tag(seed, "verified"), verified ? 1.0 : 0.0, 1.0);
}

void kcenter_suite(OracleReport& rep, std::uint64_t seed) {
  Instance inst = generate_bounded(seed, 10, 80, true);
  std::mt19937_64 rng(seed);
  const int k = uniform_int(rng, 1, inst.point_count());
  Prepared prep(inst);
  rep.add(tag(seed, "k " + std::to_string(k)), solve_kcenter(prep, k).lambda_opt,
          oracle::naive_kcenter(prep.reduced(), k));
}

}  // namespace

OracleReport run_suite(const std::string& suite, std::uint64_t first, std::uint64_t last) {
  OracleReport rep;
  rep.suite = suite;
  void (*body)(OracleReport&, std::uint64_t) = nullptr;
  if (suite == "median") {
    body = median_suite;
    rep.tolerance = 1e-9;
  } else if (suite == "ed") {
    body = ed_suite;
    rep.tolerance = 1e-9;
  } else if (suite == "cover") {
    body = cover_suite;
    rep.tolerance = 0.0;
  } else if (suite == "kcenter") {
    body = kcenter_suite;
    rep.tolerance = 1e-9;
  } else {
    throw std::invalid_argument("unknown suite " + suite);
  }
  for (std::uint64_t seed = first; seed <= last; ++seed) {
    body(rep, seed);
    if (seed == last) break;  // last may be the largest seed
  }
  return rep;
}

}  // namespace ucover::cli
