#pragma once

#include <string>

#include "json.hpp"
#include "ucover/instance.hpp"

namespace ucover {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json point_to_json(const TreePoint& p);
// Accepts {"edge":[u,v],"offset":o} with o measured from u, in either
// orientation. Unknown edges are kept as raw points so validate() can report
// them.
TreePoint point_from_json(const Tree& tree, const nlohmann::json& j);

nlohmann::json instance_to_json(const Instance& inst);
// Throws ParseError on malformed documents or an invalid tree.
Instance instance_from_json(const nlohmann::json& j);

// Numbers are printed with 17 significant digits.
std::string dump_json(const nlohmann::json& j);

}  // namespace ucover
