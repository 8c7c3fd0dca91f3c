#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace ucover::cli {

// One structure-versus-oracle comparison.
struct Comparison {
  std::string label;
  double structure = 0.0;
  double oracle = 0.0;
  double abs_dev = 0.0;
  double rel_dev = 0.0;
  bool pass = false;
};

struct OracleReport {
  std::string suite;
  double tolerance = 0.0;  // relative
  std::vector<Comparison> comparisons;

  // Records a comparison; pass iff the relative deviation is within tolerance.
  void add(std::string label, double structure, double oracle);
  int failures() const;
  nlohmann::json summary(std::size_t max_listed = 20) const;
};

const std::vector<std::string>& suite_names();

// Runs `suite` on seeds first..last inclusive. Throws std::invalid_argument
// for an unknown suite.
OracleReport run_suite(const std::string& suite, std::uint64_t first, std::uint64_t last);

}  // namespace ucover::cli
