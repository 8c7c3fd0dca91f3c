#pragma once

#include <optional>
#include <vector>

#include "ucover/instance.hpp"

// Brute-force references. Nothing here touches the decomposition or the
// query structures; only tree distances are shared with the fast path.
namespace ucover::oracle {

// Band used when an oracle decides coverage: Ed <= lambda + band.
inline double band(double lambda) { return 1e-9 * (lambda > 1.0 ? lambda : 1.0); }

// Locations must sit on vertices for everything below.

// Argmin over vertices of Ed(., P_i); smallest id on ties within 1e-12.
Vertex naive_median(const Instance& inst, int i);

// Walks from v towards the root of `rooted` edge by edge and returns the
// point farthest from v with Ed(., P_i) <= lambda, or nothing when Ed(v)
// already exceeds lambda.
std::optional<TreePoint> naive_path_scan(const Instance& inst, const RootedIndex& rooted, int i,
                                         Vertex v, double lambda);

// The greedy cover over the medians' spanning tree, with every step done by
// scanning: candidate positions from per-edge interpolation, coverage by
// testing every active point. Throws InfeasibleError.
std::vector<TreePoint> naive_greedy_cover(const Instance& inst, double lambda);

// Minimum number of centers, over all vertices and every point where some
// Ed(., P_i) crosses lambda inside an edge. Needs n <= 8; throws
// std::runtime_error when the optimum exceeds `cap`, InfeasibleError when
// some point cannot be covered.
int exhaustive_cover_optimum(const Instance& inst, double lambda, int cap);

// Candidate covering ranges: Ed(p_i*, P_i) and the balance values of every
// pair of medians (0 for pairs without a balance point), sorted, unique.
std::vector<double> naive_candidate_values(const Instance& inst);

// Smallest candidate value whose greedy cover uses at most k centers.
double naive_kcenter(const Instance& inst, int k);

// Point on the path between the medians a and b where Ed(., P_i) and
// Ed(., P_j) meet, by dense sampling then bisection; nothing when the
// two curves do not cross on the path.
std::optional<TreePoint> naive_balance_point(const Instance& inst, int i, int j, Vertex a,
                                             Vertex b);

// Vertices on the path from a to b, in order.
std::vector<Vertex> tree_path(const RootedIndex& rooted, Vertex a, Vertex b);

}  // namespace ucover::oracle
