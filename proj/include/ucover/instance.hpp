#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ucover/tree.hpp"

namespace ucover {

struct Location {
  TreePoint point;
  double prob = 0.0;
};

struct UncertainPoint {
  double weight = 1.0;
  std::vector<Location> locations;
};

struct Instance {
  Tree tree;
  std::vector<UncertainPoint> points;

  int point_count() const { return static_cast<int>(points.size()); }
  std::size_t total_locations() const;
};

inline constexpr double kProbabilityTolerance = 1e-9;

// No point of the tree comes within the covering range of P_point.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(int point, double best, double lambda);
  int point;
  double best;  // Ed at the point's median
};

// w_i * sum_j f_ij * d(x, p_ij), evaluated location by location.
double expected_distance_naive(const Instance& inst, const RootedIndex& index, const TreePoint& x,
                               int i);

// Empty iff the instance is well formed.
std::vector<std::string> validate(const Instance& inst);

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> problems);
  std::vector<std::string> problems;
};

// Throws ValidationError listing every problem validate() finds.
void require_valid(const Instance& inst);

// Every location sits on a vertex and every vertex holds a location.
bool is_vertex_constrained(const Instance& inst);

// Sum of P_i's probabilities at points of the subgraph induced by the
// vertices flagged in `in_set`.
double probability_sum(const Instance& inst, int i, const std::vector<char>& in_set);

// Uniform-attachment tree with lengths in (0,1]; each point gets 1..max_m
// locations with probabilities normalized to sum to 1. Throws
// std::invalid_argument on bad parameters.
Instance generate_random(std::uint64_t seed, int t, int n, int max_m, bool vertex_constrained);

// generate_random with sizes drawn from the seed: 1..max_n points and at
// most max_total locations in all.
Instance generate_bounded(std::uint64_t seed, int max_n, int max_total, bool vertex_constrained);

// Uniform double in [0, 1) built from the top 53 bits, so sequences do not
// depend on the standard library's distribution implementations.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace ucover
