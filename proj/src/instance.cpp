#include "ucover/instance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace ucover {

namespace {

std::string infeasible_message(int point, double best, double lambda) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "INFEASIBLE(%d): Ed at its median is %.17g > lambda %.17g", point,
                best, lambda);
  return buf;
}

}  // namespace

InfeasibleError::InfeasibleError(int point, double best, double lambda)
    : std::runtime_error(infeasible_message(point, best, lambda)), point(point), best(best) {}

std::size_t Instance::total_locations() const {
  std::size_t m = 0;
  for (const auto& p : points) m += p.locations.size();
  return m;
}

double expected_distance_naive(const Instance& inst, const RootedIndex& index, const TreePoint& x,
                               int i) {
  if (i < 0 || i >= inst.point_count())
    throw std::out_of_range("uncertain point index out of range");
  const auto& p = inst.points[i];
  double sum = 0.0;
  for (const auto& loc : p.locations) sum += loc.prob * index.dist(x, loc.point);
  return p.weight * sum;
}

ValidationError::ValidationError(std::vector<std::string> list)
    : std::runtime_error(list.empty() ? std::string("invalid instance") : list.front()),
      problems(std::move(list)) {}

void require_valid(const Instance& inst) {
  auto problems = validate(inst);
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

std::vector<std::string> validate(const Instance& inst) {
  std::vector<std::string> out;
  const Tree& tree = inst.tree;
  if (inst.points.empty()) out.push_back("instance has no uncertain points");
  for (int i = 0; i < inst.point_count(); ++i) {
    const auto& p = inst.points[i];
    const std::string tag = "point " + std::to_string(i) + ": ";
    if (!(p.weight >= 0.0) || !std::isfinite(p.weight))
      out.push_back(tag + "negative or non-finite weight");
    if (p.locations.empty()) out.push_back(tag + "no locations");
    double sum = 0.0;
    bool bad_prob = false;
    for (std::size_t j = 0; j < p.locations.size(); ++j) {
      const auto& loc = p.locations[j];
      const std::string ltag = tag + "location " + std::to_string(j) + ": ";
      if (!(loc.prob >= 0.0) || !std::isfinite(loc.prob)) {
        out.push_back(ltag + "negative or non-finite probability");
        bad_prob = true;
      }
      sum += loc.prob;
      const TreePoint& x = loc.point;
      if (x.is_vertex()) {
        if (!tree.valid_vertex(x.u)) out.push_back(ltag + "dangling vertex reference");
        continue;
      }
      int e = tree.find_edge(x.u, x.v);
      if (e < 0) {
        out.push_back(ltag + "dangling edge reference");
      } else if (!(x.offset >= 0.0 && x.offset <= tree.edge(e).length)) {
        out.push_back(ltag + "offset outside edge");
      }
    }
    if (!bad_prob && !p.locations.empty() && std::abs(sum - 1.0) > kProbabilityTolerance)
      out.push_back(tag + "probabilities sum to " + std::to_string(sum));
  }
  return out;
}

bool is_vertex_constrained(const Instance& inst) {
  std::vector<char> held(inst.tree.vertex_count(), 0);
  for (const auto& p : inst.points)
    for (const auto& loc : p.locations) {
      if (!loc.point.is_vertex()) return false;
      held[loc.point.u] = 1;
    }
  return std::all_of(held.begin(), held.end(), [](char c) { return c != 0; });
}

double probability_sum(const Instance& inst, int i, const std::vector<char>& in_set) {
  double sum = 0.0;
  for (const auto& loc : inst.points.at(i).locations) {
    const TreePoint& x = loc.point;
    if (in_set[x.u] && in_set[x.v]) sum += loc.prob;
  }
  return sum;
}

Instance generate_random(std::uint64_t seed, int t, int n, int max_m, bool vertex_constrained) {
  if (t < 1 || n < 1 || max_m < 1) throw std::invalid_argument("t, n and max_m must be at least 1");
  if (vertex_constrained && static_cast<long long>(n) * max_m < t)
    throw std::invalid_argument("vertex-constrained instance needs n * max_m >= t");
  std::mt19937_64 rng(seed);
  Instance inst;
  inst.tree = Tree(t);
  for (int k = 1; k < t; ++k) {
    Vertex parent = uniform_int(rng, 0, k - 1);
    inst.tree.add_edge(parent, k, 1.0 - uniform01(rng));
  }

  std::vector<int> counts(n);
  for (auto& m : counts) m = uniform_int(rng, 1, max_m);
  if (vertex_constrained) {
    long long total = std::accumulate(counts.begin(), counts.end(), 0LL);
    for (int i = 0; total < t; i = (i + 1) % n)
      if (counts[i] < max_m) ++counts[i], ++total;
  }

  // Vertex-constrained placement: a shuffled vertex list covers every
  // vertex first, the remaining slots are uniform.
  std::vector<Vertex> cover(t);
  std::iota(cover.begin(), cover.end(), 0);
  for (int k = t - 1; k > 0; --k) std::swap(cover[k], cover[uniform_int(rng, 0, k)]);
  std::size_t next_cover = 0;

  inst.points.resize(n);
  for (int i = 0; i < n; ++i) {
    auto& p = inst.points[i];
    p.weight = 0.25 + 1.75 * uniform01(rng);
    std::vector<double> raw(counts[i]);
    double total = 0.0;
    for (auto& r : raw) total += (r = 1.0 - uniform01(rng));
    double partial = 0.0;
    for (int j = 0; j < counts[i]; ++j) {
      Location loc;
      if (j + 1 < counts[i]) {
        loc.prob = raw[j] / total;
        partial += loc.prob;
      } else {
        loc.prob = std::max(0.0, 1.0 - partial);
      }
      if (vertex_constrained) {
        Vertex x = next_cover < cover.size() ? cover[next_cover++] : uniform_int(rng, 0, t - 1);
        loc.point = TreePoint::at_vertex(x);
      } else if (t == 1 || uniform01(rng) < 0.3) {
        loc.point = TreePoint::at_vertex(uniform_int(rng, 0, t - 1));
      } else {
        const Edge& e = inst.tree.edge(uniform_int(rng, 0, t - 2));
        double off = e.length * uniform01(rng);
        loc.point = TreePoint::on_edge(inst.tree, e.u, e.v, off);
      }
      p.locations.push_back(loc);
    }
  }
  return inst;
}

Instance generate_bounded(std::uint64_t seed, int max_n, int max_total, bool vertex_constrained) {
  if (max_n < 1 || max_total < 1)
    throw std::invalid_argument("max_n and max_total must be at least 1");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const int n = uniform_int(rng, 1, std::min(max_n, max_total));
  const int max_m = uniform_int(rng, 1, max_total / n);
  const int t = uniform_int(rng, 1, vertex_constrained ? n * max_m : max_total);
  return generate_random(seed, t, n, max_m, vertex_constrained);
}

}  // namespace ucover
