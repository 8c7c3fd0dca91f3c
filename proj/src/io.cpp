#include "ucover/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace ucover {

using nlohmann::json;

json point_to_json(const TreePoint& p) {
  if (p.is_vertex()) return json{{"edge", {p.u, p.u}}, {"offset", 0.0}};
  return json{{"edge", {p.u, p.v}}, {"offset", p.offset}};
}

TreePoint point_from_json(const Tree& tree, const json& j) {
  if (!j.is_object() || !j.contains("edge") || !j["edge"].is_array() || j["edge"].size() != 2)
    throw ParseError("point needs an \"edge\":[u,v] field");
  Vertex a = j["edge"][0].get<Vertex>();
  Vertex b = j["edge"][1].get<Vertex>();
  double off = j.value("offset", 0.0);
  if (a == b) return TreePoint{a, a, off};
  if (tree.find_edge(a, b) < 0) {
    // Kept raw; validate() reports it.
    return a < b ? TreePoint{a, b, off} : TreePoint{b, a, off};
  }
  double len = tree.edge(tree.find_edge(a, b)).length;
  if (!(off >= 0.0 && off <= len)) {
    return a < b ? TreePoint{a, b, off} : TreePoint{b, a, len - off};
  }
  return TreePoint::on_edge(tree, a, b, off);
}

json instance_to_json(const Instance& inst) {
  json edges = json::array();
  std::vector<Edge> sorted = inst.tree.edges();
  std::sort(sorted.begin(), sorted.end(),
            [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
  for (const auto& e : sorted) edges.push_back({e.u, e.v, e.length});
  json points = json::array();
  for (const auto& p : inst.points) {
    json locs = json::array();
    for (const auto& loc : p.locations) {
      json l = point_to_json(loc.point);
      l["prob"] = loc.prob;
      locs.push_back(std::move(l));
    }
    points.push_back({{"weight", p.weight}, {"locations", std::move(locs)}});
  }
  return json{{"tree", {{"vertices", inst.tree.vertex_count()}, {"edges", edges}}},
              {"points", points}};
}

Instance instance_from_json(const json& j) {
  try {
    Instance inst;
    const json& t = j.at("tree");
    inst.tree = Tree(t.at("vertices").get<int>());
    for (const auto& e : t.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw ParseError("edge must be [u,v,len]");
      inst.tree.add_edge(e[0].get<Vertex>(), e[1].get<Vertex>(), e[2].get<double>());
    }
    inst.tree.check_valid();
    for (const auto& pj : j.at("points")) {
      UncertainPoint p;
      p.weight = pj.value("weight", 1.0);
      for (const auto& lj : pj.at("locations")) {
        Location loc;
        loc.point = point_from_json(inst.tree, lj);
        loc.prob = lj.at("prob").get<double>();
        p.locations.push_back(loc);
      }
      inst.points.push_back(std::move(p));
    }
    return inst;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed instance: ") + e.what());
  } catch (const TreeError& e) {
    throw ParseError(std::string("invalid tree: ") + e.what());
  }
}

namespace {

void write_number(std::ostream& out, double x) {
  if (!std::isfinite(x)) {
    out << "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  out << s;
}

void write(std::ostream& out, const json& j, int indent) {
  const std::string pad(indent, ' ');
  const std::string inner(indent + 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << inner << json(it.key()).dump() << ": ";
        write(out, it.value(), indent + 2);
      }
      out << "\n" << pad << "}";
      return;
    }
    case json::value_t::array: {
      // Arrays of scalars stay on one line.
      bool flat = std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_primitive(); });
      if (j.empty()) {
        out << "[]";
      } else if (flat) {
        out << "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) out << ", ";
          write(out, j[k], indent);
        }
        out << "]";
      } else {
        out << "[\n";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) out << ",\n";
          out << inner;
          write(out, j[k], indent + 2);
        }
        out << "\n" << pad << "]";
      }
      return;
    }
    case json::value_t::number_float:
      write_number(out, j.get<double>());
      return;
    default:
      out << j.dump();
  }
}

}  // namespace

std::string dump_json(const json& j) {
  std::ostringstream out;
  write(out, j, 0);
  out << "\n";
  return out.str();
}

}  // namespace ucover
