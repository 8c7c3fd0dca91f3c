#include <gtest/gtest.h>

#include <algorithm>
#include <memory>
#include <random>

#include "test_support.hpp"
#include "ucover/candidate_center.hpp"
#include "ucover/coverage_index.hpp"
#include "ucover/decomposition.hpp"
#include "ucover/oracle.hpp"

namespace ucover {
namespace {

using testing::at_vertices;
using testing::path_tree;

Instance random_vc(std::uint64_t seed, int max_n = 15, int max_locations = 120) {
  std::mt19937_64 rng(seed);
  int n = uniform_int(rng, 1, max_n);
  int max_m = uniform_int(rng, 1, std::max(1, max_locations / n));
  int t = uniform_int(rng, 1, n * max_m);
  return generate_random(seed, t, n, max_m, true);
}

// Everything A2 hangs off, kept alive together.
struct Prepared {
  Instance inst;
  DecompTree dt;
  std::unique_ptr<DistOracle> a3;
  MedianTree mt;
  RootedIndex rooted;

  explicit Prepared(Instance in) : inst(std::move(in)) {
    dt = decompose(inst);
    a3 = std::make_unique<DistOracle>(inst, dt);
    mt = build_median_tree(inst, compute_medians(inst, dt));
    rooted = RootedIndex(inst.tree, mt.root);
  }
  double ed(const TreePoint& x, int i) const { return expected_distance_naive(inst, rooted, x, i); }
  // Largest Ed at a median, times a random factor in [1, 3).
  double random_lambda(std::mt19937_64& rng) const {
    double top = 0.0;
    for (int i = 0; i < inst.point_count(); ++i)
      top = std::max(top, ed(TreePoint::at_vertex(mt.median[i]), i));
    return top * (1.0 + 2.0 * uniform01(rng)) + 1e-3;
  }
};

TEST(CandidateIndex, SinglePointWithinRangeAtRoot) {
  Instance inst{path_tree({1.0, 1.0}), {}};
  inst.points.push_back(at_vertices({{0, 0.5}, {2, 0.5}, {1, 0.0}}));
  Prepared s(std::move(inst));
  CandidateIndex a2(*s.a3, s.mt, s.rooted, 2.0);
  EXPECT_EQ(a2.q(0), TreePoint::at_vertex(s.mt.root));
  auto c = a2.query(0, 0);
  ASSERT_EQ(c.kind, Candidate::kPoint);
  EXPECT_EQ(c.point, TreePoint::at_vertex(s.mt.root));
}

TEST(CandidateIndex, StopsAtDistanceLambdaFromTheLocation) {
  // Root 0 holds P_0's median; P_1 sits at vertex 2.
  Instance inst{path_tree({0.5, 1.5}), {}};
  inst.points.push_back(at_vertices({{0, 1.0}, {1, 0.0}}));
  inst.points.push_back(at_vertices({{2, 1.0}}));
  Prepared s(std::move(inst));
  ASSERT_EQ(s.mt.root, 0);
  CandidateIndex a2(*s.a3, s.mt, s.rooted, 1.0);
  const TreePoint& q = a2.q(1);
  EXPECT_EQ(q.u, 1);
  EXPECT_EQ(q.v, 2);
  EXPECT_NEAR(q.offset, 0.5, 1e-12);
}

TEST(CandidateIndex, EvenPathHitsTheMiddleVertex) {
  Instance inst{path_tree({1.0, 1.0}), {}};
  inst.points.push_back(at_vertices({{0, 1.0}, {1, 0.0}}));
  inst.points.push_back(at_vertices({{2, 1.0}}));
  Prepared s(std::move(inst));
  CandidateIndex a2(*s.a3, s.mt, s.rooted, 1.0);
  EXPECT_EQ(a2.q(1), TreePoint::at_vertex(1));
}

TEST(CandidateIndex, InfeasiblePointIsNamed) {
  Instance inst{path_tree({1.0, 1.0}), {}};
  inst.points.push_back(at_vertices({{1, 1.0}, {0, 0.0}}));
  inst.points.push_back(at_vertices({{0, 0.5}, {2, 0.5}, {1, 0.0}}));
  Prepared s(std::move(inst));
  try {
    CandidateIndex a2(*s.a3, s.mt, s.rooted, 0.5);
    FAIL() << "expected InfeasibleError";
  } catch (const InfeasibleError& e) {
    EXPECT_EQ(e.point, 1);
    EXPECT_DOUBLE_EQ(e.best, 1.0);
  }
}

TEST(CandidateIndex, QMatchesNaivePathScan) {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Prepared s(random_vc(seed));
    const double lambda = s.random_lambda(rng);
    CandidateIndex a2(*s.a3, s.mt, s.rooted, lambda);
    for (int i = 0; i < s.inst.point_count(); ++i) {
      auto want = oracle::naive_path_scan(s.inst, s.rooted, i, s.mt.median[i], lambda);
      ASSERT_TRUE(want.has_value());
      const double gap = s.rooted.dist(a2.q(i), *want);
      EXPECT_LE(gap, 1e-9 * std::max(1.0, s.rooted.dist_to_root(*want)))
          << "seed " << seed << " point " << i << " got " << to_string(a2.q(i)) << " want "
          << to_string(*want);
    }
  }
}

// Naive answer for a rank range: every active point's farthest feasible
// point towards r must lie on the path from the range LCA, and the answer
// is the deepest one. Returns false when some point sits too close to the
// boundary at the LCA for a clear verdict.
bool naive_query(const Prepared& s, const CandidateIndex& a2, double lambda, int lo, int hi,
                 Candidate& out) {
  const Vertex v = a2.range_lca(lo, hi);
  out = Candidate::unconstrained();
  double depth = -1.0;
  for (int k = lo; k <= hi; ++k) {
    const int i = s.mt.order[k];
    if (!a2.active(i)) continue;
    const double at_v = s.ed(TreePoint::at_vertex(v), i);
    if (std::abs(at_v - lambda) <= 1e-7 * std::max(1.0, lambda)) return false;
    if (at_v > lambda) {
      out = Candidate::infeasible();
      return true;
    }
    auto q = *oracle::naive_path_scan(s.inst, s.rooted, i, v, lambda);
    if (s.rooted.dist_to_root(q) > depth) {
      depth = s.rooted.dist_to_root(q);
      out = Candidate::at(q);
    }
  }
  return true;
}

TEST(CandidateIndex, RangesAndRemovalsMatchNaive) {
  std::mt19937_64 rng(99);
  int compared = 0, points = 0, infeasible = 0;
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    Prepared s(random_vc(seed));
    const int n = s.inst.point_count();
    // Tighter lambdas so some ranges are infeasible at their LCA.
    double lambda = s.random_lambda(rng) * (uniform01(rng) < 0.5 ? 0.5 : 1.0);
    std::unique_ptr<CandidateIndex> a2;
    try {
      a2 = std::make_unique<CandidateIndex>(*s.a3, s.mt, s.rooted, lambda);
    } catch (const InfeasibleError&) {
      lambda = s.random_lambda(rng);
      a2 = std::make_unique<CandidateIndex>(*s.a3, s.mt, s.rooted, lambda);
    }
    for (int step = 0; step < 60; ++step) {
      if (uniform01(rng) < 0.2) a2->remove(uniform_int(rng, 0, n - 1));
      int lo = uniform_int(rng, 0, n - 1), hi = uniform_int(rng, 0, n - 1);
      if (lo > hi) std::swap(lo, hi);
      Candidate want;
      if (!naive_query(s, *a2, lambda, lo, hi, want)) continue;
      Candidate got = a2->query(lo, hi);
      ASSERT_EQ(got.kind, want.kind) << "seed " << seed << " range " << lo << ".." << hi;
      ++compared;
      if (got.kind == Candidate::kInfeasible) ++infeasible;
      if (got.kind != Candidate::kPoint) continue;
      ++points;
      EXPECT_LE(s.rooted.dist(got.point, want.point),
                1e-9 * std::max(1.0, s.rooted.dist_to_root(want.point)))
          << "seed " << seed << " got " << to_string(got.point) << " want "
          << to_string(want.point);
    }
    EXPECT_TRUE(a2->consistent()) << "seed " << seed;
  }
  EXPECT_GT(compared, 2000);
  EXPECT_GT(points, 1000);
  EXPECT_GT(infeasible, 50);
}

TEST(CandidateIndex, RemovingAllLeavesEverythingUnconstrained) {
  Prepared s(random_vc(12));
  CandidateIndex a2(*s.a3, s.mt, s.rooted, 1e6);
  const int n = s.inst.point_count();
  for (int i = 0; i < n; ++i) a2.remove(i);
  a2.remove(0);  // no-op
  EXPECT_TRUE(a2.consistent());
  for (int lo = 0; lo < n; ++lo)
    for (int hi = lo; hi < n; ++hi) EXPECT_EQ(a2.query(lo, hi).kind, Candidate::kUnconstrained);
}

TEST(CandidateIndex, RemovalNeverMovesTheAnswerDown) {
  std::mt19937_64 rng(8);
  for (std::uint64_t seed = 40; seed < 80; ++seed) {
    Prepared s(random_vc(seed));
    const int n = s.inst.point_count();
    CandidateIndex a2(*s.a3, s.mt, s.rooted, s.random_lambda(rng));
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i : perm) {
      int lo = uniform_int(rng, 0, n - 1), hi = uniform_int(rng, lo, n - 1);
      Candidate before = a2.query(lo, hi);
      a2.remove(i);
      Candidate after = a2.query(lo, hi);
      if (before.kind != Candidate::kPoint || after.kind != Candidate::kPoint) {
        if (before.kind == Candidate::kUnconstrained)
          EXPECT_EQ(after.kind, Candidate::kUnconstrained);
        continue;
      }
      EXPECT_LE(s.rooted.dist_to_root(after.point), s.rooted.dist_to_root(before.point) + 1e-12);
    }
  }
}

TEST(CandidateIndex, AnswersAreFeasibleAndTight) {
  std::mt19937_64 rng(21);
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    Prepared s(random_vc(seed));
    const int n = s.inst.point_count();
    const double lambda = s.random_lambda(rng);
    CandidateIndex a2(*s.a3, s.mt, s.rooted, lambda);
    for (int k = 0; k < n / 3; ++k) a2.remove(uniform_int(rng, 0, n - 1));
    for (int step = 0; step < 20; ++step) {
      int lo = uniform_int(rng, 0, n - 1), hi = uniform_int(rng, lo, n - 1);
      Candidate c = a2.query(lo, hi);
      if (c.kind != Candidate::kPoint) continue;
      double worst = -1.0;
      for (int r = lo; r <= hi; ++r) {
        const int i = s.mt.order[r];
        if (!a2.active(i)) continue;
        const double e = s.a3->query_ed(c.point, i);
        EXPECT_LE(e, lambda + 1e-9 * std::max(1.0, lambda));
        worst = std::max(worst, e);
      }
      if (!(c.point == TreePoint::at_vertex(s.mt.root)))
        EXPECT_GE(worst, lambda - 1e-9 * std::max(1.0, lambda)) << "seed " << seed;
    }
  }
}

TEST(CandidateIndex, RejectsBadRanges) {
  Prepared s(random_vc(5));
  CandidateIndex a2(*s.a3, s.mt, s.rooted, 1e6);
  const int n = s.inst.point_count();
  EXPECT_THROW(a2.query(-1, 0), std::invalid_argument);
  EXPECT_THROW(a2.query(0, n), std::invalid_argument);
  if (n > 1) EXPECT_THROW(a2.query(1, 0), std::invalid_argument);
}

}  // namespace
}  // namespace ucover
