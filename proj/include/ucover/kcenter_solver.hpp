#pragma once

#include <optional>
#include <vector>

#include "json.hpp"
#include "ucover/cover_solver.hpp"

namespace ucover {

// The point between the medians of P_i and P_j where the two expected
// distances meet, with the common value.
struct BalancePoint {
  TreePoint point;  // on the reduced tree
  double value = 0.0;
};

// Nothing when Ed(p_i*, P_i) > Ed(p_i*, P_j) or Ed(p_j*, P_j) > Ed(p_j*, P_i).
// For i == j the balance point is the median itself.
std::optional<BalancePoint> compute_cij(const Prepared& prep, int i, int j);

// Sorted, exactly deduplicated candidate values: Ed(p_i*, P_i) for every i
// and, for every unordered pair, the balance value or 0 when there is none.
std::vector<double> build_candidates(const Prepared& prep);

struct KCenterSolution {
  int k = 1;
  double lambda_opt = 0.0;
  std::vector<TreePoint> centers;  // on the original tree
  std::size_t candidate_count = 0;
  int probes = 0;  // cover solves run by the search
};

// Smallest candidate value whose cover needs at most k centers. Throws
// std::invalid_argument for k < 1.
KCenterSolution solve_kcenter(const Prepared& prep, int k);
KCenterSolution solve_kcenter(const Instance& inst, int k);

nlohmann::json kcenter_to_json(const KCenterSolution& sol);

}  // namespace ucover
