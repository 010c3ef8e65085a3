// Command-line front end. Kept in a header so tests can drive it in-process.
//
// Exit codes: 0 success, 1 semantic failure (invalid graph, unsatisfiable,
// parse error), 2 I/O or usage error, 3 heuristic gave up without an answer.
#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "primo/core.hpp"
#include "primo/extensions.hpp"
#include "primo/graph_algo.hpp"
#include "primo/optimize.hpp"
#include "primo/parser.hpp"
#include "primo/propagate.hpp"
#include "primo/scc_solver.hpp"

namespace primo::cli {

enum ExitCode : int { kOk = 0, kSemantic = 1, kUsage = 2, kUnknown = 3 };

enum class OutputFormat { Plain, Records };

struct RunConfig {
  std::string input_path;
  TNormFamily tnorm = TNormFamily::ProductProbSum;
  SolveMethod method = SolveMethod::Exact;
  std::size_t beam_width = 8;
  std::size_t max_count = 64;
  OutputFormat format = OutputFormat::Plain;
  std::string output_path;
  bool components = false;
};

namespace detail {

struct Loaded {
  PrimoSpec spec;
  PrimoGraph graph;
};

class Emitter {
 public:
  Emitter(std::ostream& out, OutputFormat f) : out_(out), f_(f) {}

  void literal_bounds(const std::string& name, const CertaintyInterval& b) {
    if (f_ == OutputFormat::Plain)
      out_ << "literal " << name << " lb- " << format_fixed(b.lo) << " lb+ " << format_fixed(b.hi) << " ic "
           << format_fixed(b.midpoint()) << '\n';
    else
      record({{"kind", "literal"}, {"name", name}, {"lb_minus", b.lo}, {"lb_plus", b.hi}, {"ic", b.midpoint()}});
  }
  void literal_value(const std::string& name, double v) {
    if (f_ == OutputFormat::Plain)
      out_ << "literal " << name << " lb " << format_fixed(v) << '\n';
    else
      record({{"kind", "literal"}, {"name", name}, {"lb", v}});
  }
  void line(const std::string& kind, const std::string& text, nlohmann::ordered_json extra = {}) {
    if (f_ == OutputFormat::Plain) {
      out_ << kind << (text.empty() ? "" : " " + text) << '\n';
    } else {
      nlohmann::ordered_json j{{"kind", kind}};
      if (!text.empty()) j["value"] = text;
      for (auto& [k, v] : extra.items()) j[k] = v;
      record(j);
    }
  }
  void blank() {
    if (f_ == OutputFormat::Plain) out_ << '\n';
  }

 private:
  void record(const nlohmann::ordered_json& j) { out_ << j.dump() << '\n'; }
  std::ostream& out_;
  OutputFormat f_;
};

inline std::vector<LiteralId> sorted_literals(const PrimoGraph& g) {
  std::vector<LiteralId> ids(g.num_literals());
  for (LiteralId i = 0; i < ids.size(); ++i) ids[i] = i;
  std::sort(ids.begin(), ids.end(), [&](LiteralId a, LiteralId b) { return g.literal(a) < g.literal(b); });
  return ids;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Defeasible reasoning with certainty bounds and preferred extensions", "primo"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string tnorm = "product", method = "exact", format = "plain";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", cfg.input_path, "Input .primo file")->required();
    sub->add_option("--tnorm", tnorm, "t-norm family")->check(CLI::IsMember({"min", "product", "luka"}));
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"plain", "records"}));
  };
  auto* check = app.add_subcommand("check", "Validate a rule file and report cycles");
  add_common(check);
  auto* prop = app.add_subcommand("propagate", "Print propagated certainty bounds");
  add_common(prop);
  auto* ext = app.add_subcommand("extensions", "Enumerate admissible labelings");
  add_common(ext);
  ext->add_option("--max", cfg.max_count, "Maximum number of labelings")->check(CLI::PositiveNumber);
  auto* solve = app.add_subcommand("solve", "Select an optimal extension");
  add_common(solve);
  solve->add_option("--method", method, "Solver")->check(CLI::IsMember({"exact", "greedy", "beam"}));
  solve->add_option("--beam-width", cfg.beam_width, "Beam width")->check(CLI::PositiveNumber);
  solve->add_flag("--components", cfg.components, "Solve strongly connected components bottom up");
  auto* enc = app.add_subcommand("encode", "Export the weighted CNF instance");
  add_common(enc);
  enc->add_option("-o", cfg.output_path, "Output path (default: standard output)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  cfg.tnorm = *parse_tnorm_family(tnorm);
  cfg.method = method == "exact" ? SolveMethod::Exact : method == "greedy" ? SolveMethod::Greedy : SolveMethod::Beam;
  cfg.format = format == "records" ? OutputFormat::Records : OutputFormat::Plain;

  std::ifstream in(cfg.input_path, std::ios::binary);
  if (!in) {
    err << "error: cannot read " << cfg.input_path << '\n';
    return kUsage;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  PrimoGraph g;
  try {
    g = parse_graph(buf.str());
  } catch (const ParseError& e) {
    for (const auto& d : e.diagnostics()) err << cfg.input_path << ":" << d.to_string() << '\n';
    return kSemantic;
  } catch (const std::invalid_argument& e) {
    err << cfg.input_path << ": " << e.what() << '\n';
    return kSemantic;
  }

  detail::Emitter emit(out, cfg.format);
  auto report = validate_graph(g);

  if (check->parsed()) {
    if (report.ok()) {
      emit.line("valid", "");
      emit.line("monotonic cycles:", "none");
    } else {
      emit.line("invalid", "");
      for (const auto& c : report.monotonic_cycles) emit.line("monotonic cycle:", format_cycle(g, c));
    }
    auto odd = detect_odd_loops(g);
    if (odd.empty()) emit.line("odd loops:", "none");
    for (const auto& c : odd) emit.line("odd loop:", format_cycle(g, c));
    return report.ok() ? kOk : kSemantic;
  }

  if (!report.ok()) {
    for (const auto& c : report.monotonic_cycles) err << "error: monotonic cycle " << format_cycle(g, c) << '\n';
    return kSemantic;
  }

  try {
    BoundsState state = initialize(g, cfg.tnorm);
    if (auto inc = propagate(state)) {
      err << "error: bound crossing at " << g.vertex_name(inc->vertex) << '\n';
      return kSemantic;
    }
    auto literals = detail::sorted_literals(g);

    if (prop->parsed()) {
      for (LiteralId l : literals) emit.literal_bounds(g.literal(l).to_string(), state[g.literal_vertex(l)]);
      return kOk;
    }

    if (ext->parsed()) {
      auto res = enumerate(g, cfg.tnorm, cfg.max_count);
      for (std::size_t i = 0; i < res.labelings.size(); ++i) {
        if (i) emit.blank();
        emit.line("labeling", std::to_string(i + 1));
        for (LiteralId l : literals) emit.literal_value(g.literal(l).to_string(), res.labelings[i][g.literal_vertex(l)]);
      }
      if (!res.labelings.empty()) emit.blank();
      emit.line("count", std::to_string(res.labelings.size()));
      if (res.truncated) emit.line("truncated", "");
      return kOk;
    }

    if (enc->parsed()) {
      auto inst = encode(g, state);
      if (!inst) {
        emit.line("result", "exact");
        return kOk;
      }
      std::string text = to_wcnf(*inst);
      if (cfg.output_path.empty()) {
        out << text;
      } else {
        std::ofstream f(cfg.output_path, std::ios::binary);
        if (!(f << text)) {
          err << "error: cannot write " << cfg.output_path << '\n';
          return kUsage;
        }
      }
      return kOk;
    }

    // solve
    auto inst = encode(g, state);
    Labeling lab;
    std::optional<Assignment> assignment;
    double weight = 0.0;
    MethodOptions mo{cfg.method, cfg.beam_width};
    if (cfg.components) {
      auto r = solve_by_components(g, cfg.tnorm, mo);
      if (!r.found) {
        emit.line("result", "unsatisfiable");
        return kSemantic;
      }
      lab = r.labeling;
      weight = r.objective;
      if (inst) assignment = assignment_from(g, *inst, lab);
    } else if (inst) {
      auto r = solve_instance(*inst, mo);
      if (r.status == SolveStatus::Unsatisfiable) {
        emit.line("result", "unsatisfiable");
        return kSemantic;
      }
      if (r.status == SolveStatus::NoSolutionFound) {
        emit.line("result", "unknown");
        return kUnknown;
      }
      lab = decode(g, state, *inst, r.assignment);
      assignment = r.assignment;
      weight = r.weight;
    } else {
      lab = labeling_from(state);
    }
    if (assignment)
      for (std::size_t v = 0; v < inst->num_vars(); ++v)
        emit.line("assignment", inst->variables[v].name + ((*assignment)[v] ? " true" : " false"));
    emit.line("weight", format_fixed(weight));
    for (LiteralId l : literals) emit.literal_value(g.literal(l).to_string(), lab[g.literal_vertex(l)]);
    for (LiteralId c : check_conflict(g, lab)) emit.line("conflict", g.literal(c).to_string());
    return kOk;
  } catch (const EncodingError& e) {
    err << "error: " << e.what() << '\n';
    return kSemantic;
  } catch (const MissingStarterError& e) {
    err << "error: " << e.what() << '\n';
    return kSemantic;
  }
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

}  // namespace primo::cli
