#pragma once

#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "ucover/candidate_center.hpp"
#include "ucover/dist_oracle.hpp"
#include "ucover/medians.hpp"
#include "ucover/reduction.hpp"

namespace ucover {

// The lambda-independent part of a solve: reduction, decomposition,
// medians, the median tree rooted at r and A3. Not movable, since the
// oracle keeps references into it.
class Prepared {
 public:
  // Throws ValidationError on a malformed instance.
  explicit Prepared(const Instance& inst);
  Prepared(const Prepared&) = delete;
  Prepared& operator=(const Prepared&) = delete;

  const Instance& original() const { return original_; }
  const VCInstance& vc() const { return vc_; }
  const Instance& reduced() const { return vc_.reduced; }
  const DecompTree& decomposition() const { return dt_; }
  const MedianTree& median_tree() const { return mt_; }
  const RootedIndex& rooted() const { return rooted_; }
  const DistOracle& oracle() const { return *a3_; }
  int point_count() const { return original_.point_count(); }

 private:
  Instance original_;
  VCInstance vc_;
  DecompTree dt_;
  MedianTree mt_;
  RootedIndex rooted_;
  std::unique_ptr<DistOracle> a3_;
};

// Active median ranks with "any active rank in [lo, hi]?" queries.
class RangeStatus {
 public:
  explicit RangeStatus(int n);
  bool any(int lo, int hi) const;
  void erase(int rank) { ranks_.erase(rank); }
  bool empty() const { return ranks_.empty(); }

 private:
  std::set<int> ranks_;
};

struct CoverStats {
  int range_status_queries = 0;
  int candidate_queries = 0;
  int coverage_reports = 0;
  int removals = 0;
};

struct CoverSolution {
  double lambda = 0.0;
  std::vector<TreePoint> centers;          // on the original tree
  std::vector<TreePoint> reduced_centers;  // on the reduced tree
  std::vector<int> covered_by;             // per point, index into centers
  CoverStats stats;
};

// Called after each placement with the center (reduced tree) and the points
// it covered.
using CoverageTrace = std::function<void(const TreePoint&, const std::vector<int>&)>;

// Minimum number of centers covering every point within lambda. Throws
// std::invalid_argument for lambda < 0 and InfeasibleError naming the
// smallest i with Ed(p_i*, P_i) > lambda.
CoverSolution solve_cover(const Prepared& prep, double lambda, const CoverageTrace& trace = {});
CoverSolution solve_cover(const Instance& inst, double lambda);

// Every point has a center with naive Ed within lambda plus 1e-9.
bool verify_solution(const Instance& inst, double lambda, const std::vector<TreePoint>& centers);

nlohmann::json cover_to_json(const CoverSolution& sol);

// Graphviz drawing of the original tree with medians and centers marked.
std::string cover_to_dot(const Prepared& prep, const CoverSolution& sol);

}  // namespace ucover
