#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "check_suites.hpp"
#include "ucover/cover_solver.hpp"
#include "ucover/io.hpp"
#include "ucover/kcenter_solver.hpp"

namespace ucover::cli {
namespace {

// Usage problems found after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string input, output, dot, point, suite, seed_range;
  double lambda = 0.0;
  int k = 1;
  int point_index = 0;
  std::uint64_t seed = 1;
  int t = 50, n = 5, max_m = 4;
  bool vertex_constrained = false;
  bool dump_decomposition = false;
  bool keep_reduction = false;
  bool trace_coverage = false;
  bool edge_form = false;
};

class Io {
 public:
  Io(const Config& cfg, std::istream& in, std::ostream& out) : cfg_(cfg), in_(in), out_(out) {}

  Instance read_instance() {
    nlohmann::json j;
    try {
      if (cfg_.input.empty()) {
        j = nlohmann::json::parse(in_);
      } else {
        std::ifstream f(cfg_.input);
        if (!f) throw std::runtime_error("cannot open " + cfg_.input);
        j = nlohmann::json::parse(f);
      }
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return instance_from_json(j);
  }

  void write(const std::string& text) {
    if (cfg_.output.empty()) {
      out_ << text;
      return;
    }
    write_file(cfg_.output, text);
  }

  static void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
  }

 private:
  const Config& cfg_;
  std::istream& in_;
  std::ostream& out_;
};

void dump_debug(const Config& cfg, const Prepared& prep, std::ostream& err) {
  if (cfg.keep_reduction) err << dump_json(reduction_to_json(prep.vc()));
  if (cfg.dump_decomposition) err << decomposition_to_dot(prep.decomposition());
}

int cmd_cover(const Config& cfg, Io& io, std::ostream& err) {
  Prepared prep(io.read_instance());
  dump_debug(cfg, prep, err);
  CoverageTrace trace;
  if (cfg.trace_coverage) {
    CandidateIndex a2(prep.oracle(), prep.median_tree(), prep.rooted(), cfg.lambda);
    for (int i = 0; i < prep.point_count(); ++i)
      err << nlohmann::json{{"q", i}, {"point", point_to_json(map_back(prep.vc(), a2.q(i)))}}.dump()
          << "\n";
    trace = [&](const TreePoint& c, const std::vector<int>& covered) {
      err << nlohmann::json{{"center", point_to_json(map_back(prep.vc(), c))}, {"covers", covered}}
                 .dump()
          << "\n";
    };
  }
  CoverSolution sol = solve_cover(prep, cfg.lambda, trace);
  if (!cfg.dot.empty()) Io::write_file(cfg.dot, cover_to_dot(prep, sol));
  io.write(dump_json(cover_to_json(sol)));
  return kOk;
}

int cmd_kcenter(const Config& cfg, Io& io, std::ostream& err) {
  Prepared prep(io.read_instance());
  dump_debug(cfg, prep, err);
  io.write(dump_json(kcenter_to_json(solve_kcenter(prep, cfg.k))));
  return kOk;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int cmd_medians(const Config& cfg, Io& io, std::ostream& err) {
  Prepared prep(io.read_instance());
  dump_debug(cfg, prep, err);
  const MedianTree& mt = prep.median_tree();
  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream tsv;
  tsv.precision(17);
  tsv << "i\tvertex\ted\n";
  for (int i = 0; i < prep.point_count(); ++i) {
    const double ed = prep.oracle().query_ed(TreePoint::at_vertex(mt.median[i]), i);
    const TreePoint p = map_back(prep.vc(), TreePoint::at_vertex(mt.median[i]));
    nlohmann::json row{{"i", i}, {"point", point_to_json(p)}, {"ed", ed}};
    row["vertex"] = p.is_vertex() ? nlohmann::json(p.u) : nlohmann::json(nullptr);
    rows.push_back(row);
    tsv << i << "\t";
    if (p.is_vertex())
      tsv << p.u;
    else
      tsv << p.u << "," << p.v << "," << p.offset;
    tsv << "\t" << ed << "\n";
  }
  io.write(ends_with(cfg.output, ".tsv") ? tsv.str() : dump_json(rows));
  return kOk;
}

TreePoint parse_point(const Tree& tree, const std::string& text) {
  std::istringstream s(text);
  long long u = -1, v = -1;
  double offset = 0.0;
  char c1 = 0, c2 = 0;
  if (!(s >> u >> c1 >> v >> c2 >> offset) || c1 != ',' || c2 != ',' || !(s >> std::ws).eof())
    throw UsageError("--point expects u,v,offset");
  if (u < 0 || v < 0 || u >= tree.vertex_count() || v >= tree.vertex_count())
    throw UsageError("--point names a vertex outside the tree");
  if (u == v) {
    if (offset != 0.0) throw UsageError("--point u,u needs offset 0");
    return TreePoint::at_vertex(static_cast<Vertex>(u));
  }
  try {
    return TreePoint::on_edge(tree, static_cast<Vertex>(u), static_cast<Vertex>(v), offset);
  } catch (const TreeError& e) {
    throw UsageError(std::string("--point: ") + e.what());
  }
}

int cmd_eval(const Config& cfg, Io& io, std::ostream&) {
  Instance inst = io.read_instance();
  require_valid(inst);
  for (const auto& p : inst.points)
    for (const auto& loc : p.locations)
      if (!loc.point.is_vertex()) throw ValidationError({"eval needs every location at a vertex"});
  if (cfg.point_index >= inst.point_count())
    throw UsageError("--i is out of range (" + std::to_string(inst.point_count()) + " points)");
  const TreePoint x = parse_point(inst.tree, cfg.point);
  if (cfg.edge_form && x.is_vertex()) throw UsageError("--edge-form needs a point inside an edge");

  DecompTree dt = decompose(inst);
  DistOracle a3(inst, dt);
  nlohmann::json j{
      {"point", point_to_json(x)}, {"i", cfg.point_index}, {"ed", a3.query_ed(x, cfg.point_index)}};
  if (cfg.edge_form) {
    const int e = inst.tree.find_edge(x.u, x.v);
    EdgeLinearForm f = a3.edge_linear_form(e, cfg.point_index);
    j["edge_form"] = {{"edge", {inst.tree.edge(e).u, inst.tree.edge(e).v}},
                      {"slope", f.slope},
                      {"intercept", f.intercept}};
  }
  io.write(dump_json(j));
  return kOk;
}

int cmd_gen(const Config& cfg, Io& io, std::ostream&) {
  Instance inst;
  try {
    inst = generate_random(cfg.seed, cfg.t, cfg.n, cfg.max_m, cfg.vertex_constrained);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  io.write(dump_json(instance_to_json(inst)));
  return kOk;
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw UsageError("--seed-range expects A..B");
  try {
    std::size_t used_a = 0, used_b = 0;
    const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    if (a.empty() || b.empty() || a[0] == '-' || b[0] == '-') throw std::invalid_argument("sign");
    const std::uint64_t lo = std::stoull(a, &used_a), hi = std::stoull(b, &used_b);
    if (used_a != a.size() || used_b != b.size() || lo > hi) throw std::invalid_argument("range");
    return {lo, hi};
  } catch (const std::exception&) {
    throw UsageError("--seed-range expects A..B with 0 <= A <= B");
  }
}

int cmd_check(const Config& cfg, Io& io, std::ostream& err) {
  auto [lo, hi] = parse_seed_range(cfg.seed_range);
  OracleReport rep = run_suite(cfg.suite, lo, hi);
  nlohmann::json summary = rep.summary();
  summary["seeds"] = {lo, hi};
  io.write(dump_json(summary));
  if (rep.failures() > 0) {
    err << rep.failures() << " of " << rep.comparisons.size() << " comparisons failed\n";
    return kInternal;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Config cfg;
  CLI::App app{"Covering uncertain points on a tree", "ucover"};
  app.require_subcommand(1, 1);

  auto add_io = [&](CLI::App* sub, bool with_input) {
    if (with_input)
      sub->add_option("--input", cfg.input, "Instance JSON (default stdin)")
          ->check(CLI::ExistingFile);
    sub->add_option("--output", cfg.output, "Result file (default stdout)");
  };
  auto add_debug = [&](CLI::App* sub) {
    sub->add_flag("--dump-decomposition", cfg.dump_decomposition, "Decomposition as DOT on stderr");
    sub->add_flag("--keep-reduction", cfg.keep_reduction, "Reduced instance as JSON on stderr");
  };

  auto* cover = app.add_subcommand("cover", "Fewest centers covering every point within lambda");
  add_io(cover, true);
  cover->add_option("--lambda", cfg.lambda, "Covering range")
      ->required()
      ->check(CLI::NonNegativeNumber);
  cover->add_option("--dot", cfg.dot, "Write the cover as DOT");
  cover->add_flag("--trace-coverage", cfg.trace_coverage,
                  "Log q_i and each coverage report on stderr");
  add_debug(cover);

  auto* kcenter = app.add_subcommand("kcenter", "Smallest covering range for k centers");
  add_io(kcenter, true);
  kcenter->add_option("-k", cfg.k, "Number of centers")->required()->check(CLI::PositiveNumber);
  add_debug(kcenter);

  auto* medians =
      app.add_subcommand("medians", "Median of every point (TSV when --output ends in .tsv)");
  add_io(medians, true);
  add_debug(medians);

  auto* eval = app.add_subcommand("eval", "Expected distance of one point at a tree point");
  add_io(eval, true);
  eval->add_option("--point", cfg.point, "u,v,offset (offset from u; u,u,0 for a vertex)")
      ->required();
  eval->add_option("--i", cfg.point_index, "Point index, 0-based")
      ->required()
      ->check(CLI::NonNegativeNumber);
  eval->add_flag("--edge-form", cfg.edge_form, "Also print slope and intercept along the edge");

  auto* gen = app.add_subcommand("gen", "Random instance");
  add_io(gen, false);
  gen->add_option("--seed", cfg.seed, "Generator seed");
  gen->add_option("--t", cfg.t, "Vertex count")->check(CLI::PositiveNumber);
  gen->add_option("--n", cfg.n, "Point count")->check(CLI::PositiveNumber);
  gen->add_option("--max-m", cfg.max_m, "Locations per point, at most")->check(CLI::PositiveNumber);
  gen->add_flag("--vertex-constrained", cfg.vertex_constrained,
                "Locations on vertices, every vertex used");

  auto* check =
      app.add_subcommand("check", "Randomized cross-checks against the brute-force oracles");
  add_io(check, false);
  check->add_option("--seed-range", cfg.seed_range, "Seeds A..B")->required();
  check->add_option("--suite", cfg.suite, "Suite name")
      ->required()
      ->check(CLI::IsMember(suite_names()));

  std::vector<std::string> argv_store{"ucover"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  Io io(cfg, in, out);
  try {
    if (cover->parsed()) return cmd_cover(cfg, io, err);
    if (kcenter->parsed()) return cmd_kcenter(cfg, io, err);
    if (medians->parsed()) return cmd_medians(cfg, io, err);
    if (eval->parsed()) return cmd_eval(cfg, io, err);
    if (gen->parsed()) return cmd_gen(cfg, io, err);
    return cmd_check(cfg, io, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const ValidationError& e) {
    for (const auto& p : e.problems) err << "invalid instance: " << p << "\n";
    return kInvalid;
  } catch (const InfeasibleError& e) {
    err << e.what() << "\n";
    return kInfeasible;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace ucover::cli
