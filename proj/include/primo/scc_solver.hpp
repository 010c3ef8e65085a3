// Bottom-up solving over the SCC condensation. Each component is solved with
// its predecessors pinned to their chosen labels; a component that cannot be
// labeled sends the search back to the most recent upstream component with
// an untried alternative. Alternatives come lazily in increasing local weight.
#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "primo/core.hpp"
#include "primo/extensions.hpp"
#include "primo/graph_algo.hpp"
#include "primo/optimize.hpp"
#include "primo/propagate.hpp"

namespace primo {

enum class SolveMethod { Exact, Greedy, Beam };

struct MethodOptions {
  SolveMethod method = SolveMethod::Exact;
  std::size_t beam_width = 8;
};

/// Monolithic or per-component solve of one weighted instance.
inline SolveResult solve_instance(const WcnfInstance& inst, const MethodOptions& m) {
  switch (m.method) {
    case SolveMethod::Exact: return solve_exact(inst);
    case SolveMethod::Greedy: return solve_heuristic(inst, {HeuristicMethod::Greedy, m.beam_width});
    case SolveMethod::Beam: return solve_heuristic(inst, {HeuristicMethod::Beam, m.beam_width});
  }
  return {};
}

struct ComponentPlan {
  Condensation condensation;
  /// For each component, the vertices of earlier components it reads.
  std::vector<std::vector<VertexId>> boundary;
};

inline ComponentPlan plan_components(const PrimoGraph& g) {
  ComponentPlan plan{condense(g), {}};
  plan.boundary.resize(plan.condensation.components.size());
  for (const Edge& e : g.edges()) {
    auto from = plan.condensation.component_of[e.from], to = plan.condensation.component_of[e.to];
    if (from != to) plan.boundary[to].push_back(e.from);
  }
  for (auto& b : plan.boundary) {
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
  }
  return plan;
}

struct ComponentSolveResult {
  bool found = false;
  Labeling labeling;
  /// Objective of the labeling measured against the whole-graph bounds.
  double objective = std::numeric_limits<double>::infinity();
  /// Times a component had no labeling left under the current upstream choice.
  std::size_t backtracks = 0;
  /// Component alternatives tried in total.
  std::size_t alternatives = 0;
};

namespace detail {

class ComponentSearch {
 public:
  ComponentSearch(const PrimoGraph& g, TNormFamily family, MethodOptions m)
      : g_(g), family_(family), m_(m), plan_(plan_components(g)), global_(initialize(g, family)) {}

  ComponentSolveResult run() {
    if (propagate(global_)) return result_;
    global_inst_ = encode(g_, global_);
    if (!global_inst_) {
      result_.found = true;
      result_.labeling = labeling_from(global_);
      result_.objective = 0.0;
      return result_;
    }
    const auto& comps = plan_.condensation.components;
    var_cost_false_.resize(global_inst_->num_vars());
    var_cost_true_.resize(global_inst_->num_vars());
    vars_in_.assign(comps.size(), {});
    for (std::size_t v = 0; v < global_inst_->num_vars(); ++v) {
      LiteralId p = *global_inst_->variables[v].literal;
      var_cost_false_[v] = weight_w(global_, p);
      var_cost_true_[v] = weight_w(global_, g_.complement(p));
      vars_in_[plan_.condensation.component_of[g_.literal_vertex(p)]].push_back(v);
    }
    rest_.assign(comps.size() + 1, 0.0);
    for (std::size_t i = comps.size(); i-- > 0;) {
      rest_[i] = rest_[i + 1];
      for (std::size_t v : vars_in_[i]) rest_[i] += std::min(var_cost_false_[v], var_cost_true_[v]);
    }
    std::vector<std::optional<double>> pins(g_.num_vertices());
    dfs(0, pins, 0.0);
    return result_;
  }

 private:
  bool exact_mode() const { return m_.method == SolveMethod::Exact; }

  // Returns true if some complete labeling was reached below this node.
  bool dfs(std::size_t i, const std::vector<std::optional<double>>& pins, double acc) {
    const auto& comps = plan_.condensation.components;
    if (result_.found && (!exact_mode() || acc + rest_[i] > result_.objective + kEpsilon)) return false;
    if (i == comps.size()) return finish(pins);

    BoundsState s = initialize(g_, family_);
    for (VertexId v = 0; v < pins.size(); ++v)
      if (pins[v]) s.pin(v, *pins[v]);
    if (propagate(s)) return false;

    const auto& comp = comps[i];
    bool exact = std::all_of(comp.begin(), comp.end(), [&](VertexId v) { return s[v].exact(); });
    bool any = false;
    auto descend = [&](const std::vector<double>& values) {
      ++result_.alternatives;
      auto next = pins;
      double cost = acc;
      for (std::size_t k = 0; k < comp.size(); ++k) next[comp[k]] = values[k];
      for (std::size_t v : vars_in_[i]) {
        LiteralId p = *global_inst_->variables[v].literal;
        bool reached = values[position(comp, g_.literal_vertex(p))] >= global_inst_->variables[v].alpha;
        cost += reached ? var_cost_true_[v] : var_cost_false_[v];
      }
      any |= dfs(i + 1, next, cost);
    };

    if (exact) {
      std::vector<double> values;
      for (VertexId v : comp) values.push_back(s[v].lo);
      descend(values);
    } else {
      EncodeOptions eo;
      eo.scope.assign(g_.num_vertices(), 0);
      for (VertexId v : comp) eo.scope[v] = 1;
      auto inst = encode(g_, s, eo);
      if (!inst) throw MissingStarterError("component is not exact but has no ambiguous antecedent");
      std::vector<Assignment> tried;
      auto take = [&](const Assignment& a) {
        tried.push_back(a);
        Labeling lab = evaluate_assignment(g_, s, *inst, a, eo.scope);
        std::vector<double> values;
        for (VertexId v : comp) values.push_back(lab[v]);
        descend(values);
      };
      if (!exact_mode()) {
        auto h = solve_instance(*inst, m_);
        if (h.found()) take(h.assignment);
      }
      while (!(result_.found && !exact_mode())) {
        auto r = solve_exact(*inst, tried);
        if (!r.found()) break;
        take(r.assignment);
      }
    }
    if (!any) ++result_.backtracks;
    return any;
  }

  bool finish(const std::vector<std::optional<double>>& pins) {
    Labeling lab;
    for (const auto& p : pins) lab.values.push_back(p.value_or(0.0));
    if (!check_admissible(g_, family_, lab)) return false;
    double obj = objective(global_, *global_inst_, assignment_from(g_, *global_inst_, lab));
    if (!result_.found || obj < result_.objective - kEpsilon) {
      result_.found = true;
      result_.objective = obj;
      result_.labeling = std::move(lab);
    }
    return true;
  }

  static std::size_t position(const std::vector<VertexId>& comp, VertexId v) {
    return static_cast<std::size_t>(std::lower_bound(comp.begin(), comp.end(), v) - comp.begin());
  }

  const PrimoGraph& g_;
  TNormFamily family_;
  MethodOptions m_;
  ComponentPlan plan_;
  BoundsState global_;
  std::optional<WcnfInstance> global_inst_;
  std::vector<double> var_cost_false_, var_cost_true_, rest_;
  std::vector<std::vector<std::size_t>> vars_in_;
  ComponentSolveResult result_;
};

}  // namespace detail

/// Solves component by component. In exact mode every alternative is
/// explored under a global bound, so the objective matches the monolithic
/// optimum; heuristic modes stop at the first complete labeling.
inline ComponentSolveResult solve_by_components(const PrimoGraph& g, TNormFamily family = TNormFamily::ProductProbSum,
                                                MethodOptions m = {}) {
  if (!validate_graph(g).ok()) throw std::invalid_argument("graph contains a monotonic cycle");
  return detail::ComponentSearch(g, family, m).run();
}

}  // namespace primo
