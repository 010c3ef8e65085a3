// Preferred-extension selection by weighted satisfiability.
//
// After propagation, each ambiguous nonmonotonic target p becomes a boolean
// x_p ("p reaches its threshold", i.e. p is coerced to LB+). Hard clauses
// state x_p <=> (the threshold is reached given the other choices); two soft
// unit clauses per variable price the two coercions with W(p) and W(~p).
// The minimum-weight assignment is an optimal admissible labeling.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "primo/core.hpp"
#include "primo/extensions.hpp"
#include "primo/propagate.hpp"

namespace primo {

/// Information content: the midpoint of the literal's interval.
inline double ic(const BoundsState& s, LiteralId p) { return s[s.graph().literal_vertex(p)].midpoint(); }
inline double ic(const BoundsState& s, const Literal& p) { return ic(s, s.graph().literal_id(p)); }

/// W(p) = IC(p) + (1 - IC(~p)): the cost of leaving p at LB-.
inline double weight_w(const BoundsState& s, LiteralId p) { return ic(s, p) + (1.0 - ic(s, s.graph().complement(p))); }
inline double weight_w(const BoundsState& s, const Literal& p) { return weight_w(s, s.graph().literal_id(p)); }

class EncodingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Either HARD or a finite soft weight. The two never mix arithmetically.
class Weight {
 public:
  static Weight hard() { return Weight(); }
  static Weight soft(double w) { return Weight(w); }
  bool is_hard() const { return !value_; }
  double value() const {
    if (!value_) throw std::logic_error("hard clause has no numeric weight");
    return *value_;
  }

 private:
  Weight() = default;
  explicit Weight(double w) : value_(w) {}
  std::optional<double> value_;
};

/// A disjunction of DIMACS literals: +v means x_v, -v means not x_v (1-based).
struct WeightedClause {
  std::vector<int> literals;
  Weight weight = Weight::hard();
  std::string note;
};

struct WcnfVariable {
  std::string name;
  /// Ordering key for solvers: variables far from IC = 0.5 are decided first.
  double ic = 0.5;
  std::optional<LiteralId> literal;
  double alpha = 0.0;
};

struct WcnfInstance {
  std::vector<WcnfVariable> variables;
  std::vector<WeightedClause> hard;
  std::vector<WeightedClause> soft;

  std::size_t num_vars() const { return variables.size(); }
};

using Assignment = std::vector<bool>;

namespace detail {

inline std::vector<int> normalize_clause(std::vector<int> c) {
  auto key = [](int l) { return std::pair{std::abs(l), l < 0}; };
  std::sort(c.begin(), c.end(), [&](int a, int b) { return key(a) < key(b); });
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

inline bool tautology(const std::vector<int>& c) {
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    if (c[i] == -c[i + 1]) return true;
  return false;
}

inline bool clause_less(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](int x, int y) {
    return std::pair{std::abs(x), x < 0} < std::pair{std::abs(y), y < 0};
  });
}

/// Exact evaluation of non-exact vertices once every ambiguous antecedent has
/// been decided. Exact vertices keep their stable label.
class Evaluator {
 public:
  static constexpr std::size_t kNoVar = static_cast<std::size_t>(-1);

  Evaluator(const BoundsState& s, const std::vector<std::size_t>& var_of) : s_(s), g_(s.graph()), var_of_(var_of) {
    memo_.assign(g_.num_vertices(), kUnset);
  }

  void reset(const Assignment* x) {
    x_ = x;
    std::fill(memo_.begin(), memo_.end(), kUnset);
  }

  double value(VertexId v) {
    if (s_[v].exact()) return s_[v].lo;
    if (memo_[v] == kBusy) throw EncodingError("monotonic cycle met while evaluating " + g_.vertex_name(v));
    if (memo_[v] != kUnset) return memo_[v];
    memo_[v] = kBusy;
    double out;
    if (g_.is_justification(v)) {
      const auto& c = g_.compiled(g_.justification_of(v));
      out = c.sufficiency;
      for (LiteralId m : c.monotonic) out = tnorm(s_.family(), out, value(g_.literal_vertex(m)));
      for (const auto& [t, alpha] : c.nonmonotonic) out = tnorm(s_.family(), out, factor(t, alpha, v));
    } else {
      out = g_.input(v).value_or(0.0);
      for (JustificationId j : g_.supporters(v)) out = snorm(s_.family(), out, value(g_.justification_vertex(j)));
    }
    memo_[v] = out;
    return out;
  }

  /// Variables whose choice can influence `v`, in ascending order.
  std::vector<std::size_t> cone(VertexId v) const {
    std::vector<char> seen(g_.num_vertices(), 0);
    std::vector<std::size_t> vars;
    std::vector<VertexId> stack{v};
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      if (seen[u] || s_[u].exact()) continue;
      seen[u] = 1;
      if (g_.is_justification(u)) {
        const auto& c = g_.compiled(g_.justification_of(u));
        for (LiteralId m : c.monotonic) stack.push_back(g_.literal_vertex(m));
        for (const auto& [t, alpha] : c.nonmonotonic)
          if (classify(s_, t, alpha) == AntecedentStatus::Ambiguous && var_of_[t] != kNoVar) vars.push_back(var_of_[t]);
      } else {
        for (JustificationId j : g_.supporters(u)) stack.push_back(g_.justification_vertex(j));
      }
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
  }

 private:
  double factor(LiteralId t, double alpha, VertexId at) {
    switch (classify(s_, t, alpha)) {
      case AntecedentStatus::Satisfied: return 1.0;
      case AntecedentStatus::Exceeded: return 0.0;
      case AntecedentStatus::Ambiguous: break;
    }
    if (var_of_[t] == kNoVar || !x_)
      throw EncodingError("undecided antecedent on " + g_.literal(t).to_string() + " at " + g_.vertex_name(at));
    return (*x_)[var_of_[t]] ? 0.0 : 1.0;
  }

  static constexpr double kUnset = -1.0;
  static constexpr double kBusy = -2.0;
  const BoundsState& s_;
  const PrimoGraph& g_;
  const std::vector<std::size_t>& var_of_;
  const Assignment* x_ = nullptr;
  std::vector<double> memo_;
};

}  // namespace detail

struct EncodeOptions {
  /// Restrict variables to ambiguous antecedents of justifications inside
  /// this vertex set (empty: whole graph).
  std::vector<char> scope;
  /// Largest number of variables a single literal may depend on.
  std::size_t max_cone = 20;
  /// Largest number of clauses produced by expanding one biconditional.
  std::size_t max_expansion = 1u << 16;
};

/// Variable index per literal (kNoVar when the literal is not a variable).
inline std::vector<std::size_t> variable_index(const PrimoGraph& g, const WcnfInstance& inst) {
  std::vector<std::size_t> var_of(g.num_literals(), detail::Evaluator::kNoVar);
  for (std::size_t i = 0; i < inst.num_vars(); ++i)
    if (inst.variables[i].literal) var_of[*inst.variables[i].literal] = i;
  return var_of;
}

/// Builds the weighted instance for a stable state; std::nullopt when no
/// ambiguous antecedent remains (the state is already exact).
inline std::optional<WcnfInstance> encode(const PrimoGraph& g, const BoundsState& s, const EncodeOptions& opts = {}) {
  auto in_scope = [&](VertexId v) { return opts.scope.empty() || opts.scope[v]; };

  // Ambiguous targets, each with a single threshold.
  std::vector<std::optional<double>> threshold(g.num_literals());
  for (JustificationId j = 0; j < g.num_justifications(); ++j) {
    if (!in_scope(g.justification_vertex(j))) continue;
    for (const auto& [t, alpha] : g.compiled(j).nonmonotonic) {
      if (classify(s, t, alpha) != AntecedentStatus::Ambiguous) continue;
      if (threshold[t] && *threshold[t] != alpha)
        throw EncodingError("literal " + g.literal(t).to_string() +
                            " is tested at two distinct thresholds inside its ambiguous range");
      threshold[t] = alpha;
    }
  }
  std::vector<LiteralId> targets;
  for (LiteralId l = 0; l < g.num_literals(); ++l)
    if (threshold[l]) targets.push_back(l);
  if (targets.empty()) return std::nullopt;
  std::sort(targets.begin(), targets.end(), [&](LiteralId a, LiteralId b) { return g.literal(a) < g.literal(b); });

  WcnfInstance inst;
  for (LiteralId t : targets) inst.variables.push_back({g.literal(t).to_string(), ic(s, t), t, *threshold[t]});
  auto var_of = variable_index(g, inst);
  detail::Evaluator eval(s, var_of);

  std::vector<std::vector<int>> clauses;
  for (std::size_t q = 0; q < inst.num_vars(); ++q) {
    const int xq = static_cast<int>(q) + 1;
    VertexId qv = g.literal_vertex(*inst.variables[q].literal);
    const double alpha = inst.variables[q].alpha;
    auto cone = eval.cone(qv);
    if (cone.size() > opts.max_cone)
      throw EncodingError("literal " + inst.variables[q].name + " depends on too many choices");

    // Minimal sets Z of variables that must stay below threshold (x_r false)
    // for q to reach alpha. LB(q) is monotone in that set.
    std::vector<std::uint32_t> masks(std::size_t{1} << cone.size());
    for (std::uint32_t m = 0; m < masks.size(); ++m) masks[m] = m;
    std::stable_sort(masks.begin(), masks.end(),
                     [](std::uint32_t a, std::uint32_t b) { return __builtin_popcount(a) < __builtin_popcount(b); });
    std::vector<std::uint32_t> minimal;
    Assignment x(inst.num_vars(), true);
    for (std::uint32_t m : masks) {
      if (std::any_of(minimal.begin(), minimal.end(), [&](std::uint32_t z) { return (z & m) == z; })) continue;
      for (std::size_t i = 0; i < cone.size(); ++i) x[cone[i]] = !((m >> i) & 1u);
      eval.reset(&x);
      if (eval.value(qv) >= alpha) minimal.push_back(m);
    }

    auto lit = [&](std::size_t i, bool positive) { return positive ? static_cast<int>(cone[i]) + 1 : -(static_cast<int>(cone[i]) + 1); };
    // q reached if some Z is all below threshold: (x_q or OR_{r in Z} x_r).
    for (std::uint32_t z : minimal) {
      std::vector<int> c{xq};
      for (std::size_t i = 0; i < cone.size(); ++i)
        if ((z >> i) & 1u) c.push_back(lit(i, true));
      clauses.push_back(std::move(c));
    }
    // q reached only if some Z holds: distribute the DNF into CNF.
    std::size_t expansion = 1;
    for (std::uint32_t z : minimal) {
      expansion *= static_cast<std::size_t>(__builtin_popcount(z));
      if (expansion > opts.max_expansion) throw EncodingError("clausal expansion too large for " + inst.variables[q].name);
    }
    if (minimal.empty()) {
      clauses.push_back({-xq});
    } else if (expansion > 0) {
      std::vector<std::vector<std::size_t>> members;
      for (std::uint32_t z : minimal) {
        std::vector<std::size_t> mem;
        for (std::size_t i = 0; i < cone.size(); ++i)
          if ((z >> i) & 1u) mem.push_back(i);
        members.push_back(std::move(mem));
      }
      std::vector<std::size_t> pick(members.size(), 0);
      while (true) {
        std::vector<int> c{-xq};
        for (std::size_t k = 0; k < members.size(); ++k) c.push_back(lit(members[k][pick[k]], false));
        clauses.push_back(std::move(c));
        std::size_t k = 0;
        while (k < members.size() && ++pick[k] == members[k].size()) pick[k++] = 0;
        if (k == members.size()) break;
      }
    }
  }

  for (auto& c : clauses) c = detail::normalize_clause(std::move(c));
  clauses.erase(std::remove_if(clauses.begin(), clauses.end(), detail::tautology), clauses.end());
  std::sort(clauses.begin(), clauses.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return detail::clause_less(a, b);
  });
  clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
  std::vector<std::vector<int>> kept;
  for (const auto& c : clauses) {
    bool subsumed = std::any_of(kept.begin(), kept.end(), [&](const auto& k) {
      return std::includes(c.begin(), c.end(), k.begin(), k.end(), [](int x, int y) {
        return std::pair{std::abs(x), x < 0} < std::pair{std::abs(y), y < 0};
      });
    });
    if (!subsumed) kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end(), detail::clause_less);
  for (auto& c : kept) inst.hard.push_back({std::move(c), Weight::hard(), "structure"});

  for (std::size_t q = 0; q < inst.num_vars(); ++q) {
    LiteralId p = *inst.variables[q].literal;
    const int xq = static_cast<int>(q) + 1;
    inst.soft.push_back({{xq}, Weight::soft(weight_w(s, p)), "W(" + inst.variables[q].name + ")"});
    inst.soft.push_back({{-xq}, Weight::soft(weight_w(s, g.complement(p))),
                         "W(" + g.literal(g.complement(p)).to_string() + ")"});
  }
  return inst;
}

// ---------------------------------------------------------------------------
// Solving

enum class SolveStatus {
  Optimal,          // exact solver, minimum weight
  Feasible,         // heuristic solver, finite weight
  Unsatisfiable,    // exact solver proved no finite assignment exists
  NoSolutionFound,  // heuristic dead end; says nothing about satisfiability
};

struct SolveResult {
  SolveStatus status = SolveStatus::Unsatisfiable;
  Assignment assignment;
  double weight = std::numeric_limits<double>::infinity();
  std::size_t nodes = 0;

  bool found() const { return status == SolveStatus::Optimal || status == SolveStatus::Feasible; }
};

namespace detail {

/// Falsification cost of each value of each variable, from soft unit clauses.
struct UnitCosts {
  std::vector<double> if_false, if_true;
};

inline UnitCosts unit_costs(const WcnfInstance& inst) {
  UnitCosts c{std::vector<double>(inst.num_vars(), 0.0), std::vector<double>(inst.num_vars(), 0.0)};
  for (const auto& cl : inst.soft) {
    if (cl.literals.size() != 1) throw std::invalid_argument("solver supports soft unit clauses only");
    int l = cl.literals.front();
    std::size_t v = static_cast<std::size_t>(std::abs(l)) - 1;
    (l > 0 ? c.if_false : c.if_true)[v] += cl.weight.value();
  }
  return c;
}

/// Decreasing |IC - 0.5|, then name.
inline std::vector<std::size_t> decision_order(const WcnfInstance& inst) {
  std::vector<std::size_t> order(inst.num_vars());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    double da = std::fabs(inst.variables[a].ic - 0.5), db = std::fabs(inst.variables[b].ic - 0.5);
    if (!nearly_equal(da, db)) return da > db;
    return inst.variables[a].name < inst.variables[b].name;
  });
  return order;
}

// -1 unassigned, 0 false, 1 true.
using Partial = std::vector<signed char>;

inline int lit_value(const Partial& p, int l) {
  signed char v = p[static_cast<std::size_t>(std::abs(l)) - 1];
  if (v < 0) return -1;
  return (l > 0) == (v == 1) ? 1 : 0;
}

inline bool falsified(const Partial& p, const std::vector<int>& clause) {
  return std::all_of(clause.begin(), clause.end(), [&](int l) { return lit_value(p, l) == 0; });
}

/// Tie-break key among equal weights: fewer true variables, then
/// lexicographic by variable name with false before true.
inline std::vector<int> tie_key(const WcnfInstance& inst, const Assignment& a) {
  std::vector<std::size_t> by_name(inst.num_vars());
  for (std::size_t i = 0; i < by_name.size(); ++i) by_name[i] = i;
  std::sort(by_name.begin(), by_name.end(),
            [&](std::size_t x, std::size_t y) { return inst.variables[x].name < inst.variables[y].name; });
  std::vector<int> key{static_cast<int>(std::count(a.begin(), a.end(), true))};
  for (std::size_t i : by_name) key.push_back(a[i] ? 1 : 0);
  return key;
}

inline bool better(const WcnfInstance& inst, double w, const Assignment& a, double best_w, const Assignment& best) {
  if (best.empty()) return true;
  if (!nearly_equal(w, best_w)) return w < best_w;
  return tie_key(inst, a) < tie_key(inst, best);
}

}  // namespace detail

/// Weight of a total assignment: sum of falsified soft clauses, or nullopt if
/// a hard clause is falsified.
inline std::optional<double> assignment_weight(const WcnfInstance& inst, const Assignment& a) {
  detail::Partial p(a.begin(), a.end());
  for (const auto& c : inst.hard)
    if (detail::falsified(p, c.literals)) return std::nullopt;
  double w = 0.0;
  for (const auto& c : inst.soft)
    if (detail::falsified(p, c.literals)) w += c.weight.value();
  return w;
}

/// Admissible pruning bound for a partial assignment (-1 = unassigned):
/// falsified soft weight so far plus the cheaper side of every open variable.
inline double lower_bound(const WcnfInstance& inst, const std::vector<signed char>& partial) {
  auto costs = detail::unit_costs(inst);
  double lb = 0.0;
  for (std::size_t v = 0; v < inst.num_vars(); ++v) {
    if (partial[v] < 0)
      lb += std::min(costs.if_false[v], costs.if_true[v]);
    else
      lb += partial[v] ? costs.if_true[v] : costs.if_false[v];
  }
  return lb;
}

/// Branch and bound. Assignments listed in `excluded` are treated as if
/// blocked by a hard clause (used to produce the k-th best solution).
inline SolveResult solve_exact(const WcnfInstance& inst, const std::vector<Assignment>& excluded = {}) {
  const std::size_t n = inst.num_vars();
  auto costs = detail::unit_costs(inst);
  auto order = detail::decision_order(inst);

  std::vector<std::vector<int>> hard;
  for (const auto& c : inst.hard) hard.push_back(c.literals);
  for (const auto& e : excluded) {
    std::vector<int> block;
    for (std::size_t v = 0; v < n; ++v) block.push_back(e[v] ? -static_cast<int>(v + 1) : static_cast<int>(v + 1));
    hard.push_back(std::move(block));
  }
  std::vector<std::vector<std::size_t>> occurs(n);
  for (std::size_t i = 0; i < hard.size(); ++i)
    for (int l : hard[i]) occurs[static_cast<std::size_t>(std::abs(l)) - 1].push_back(i);

  // Suffix sums of the cheaper side, in decision order.
  std::vector<double> rest(n + 1, 0.0);
  for (std::size_t k = n; k-- > 0;)
    rest[k] = rest[k + 1] + std::min(costs.if_false[order[k]], costs.if_true[order[k]]);

  SolveResult res;
  detail::Partial p(n, -1);
  std::function<void(std::size_t, double)> dfs = [&](std::size_t k, double acc) {
    ++res.nodes;
    if (!res.assignment.empty() && acc + rest[k] > res.weight + kEpsilon) return;
    if (k == n) {
      Assignment a(n);
      for (std::size_t v = 0; v < n; ++v) a[v] = p[v] == 1;
      if (detail::better(inst, acc, a, res.weight, res.assignment)) {
        res.weight = acc;
        res.assignment = std::move(a);
      }
      return;
    }
    std::size_t v = order[k];
    for (signed char val : {0, 1}) {
      p[v] = val;
      bool ok = std::none_of(occurs[v].begin(), occurs[v].end(),
                             [&](std::size_t ci) { return detail::falsified(p, hard[ci]); });
      if (ok) dfs(k + 1, acc + (val ? costs.if_true[v] : costs.if_false[v]));
    }
    p[v] = -1;
  };
  if (n == 0) {
    bool ok = std::none_of(hard.begin(), hard.end(), [&](const auto& c) { return detail::falsified(p, c); });
    if (ok) return {SolveStatus::Optimal, {}, 0.0, 1};
    return res;
  }
  dfs(0, 0.0);
  res.status = res.assignment.empty() ? SolveStatus::Unsatisfiable : SolveStatus::Optimal;
  return res;
}

enum class HeuristicMethod { Greedy, Beam };

struct HeuristicOptions {
  HeuristicMethod method = HeuristicMethod::Greedy;
  std::size_t beam_width = 8;
};

namespace detail {

inline SolveResult no_solution(std::size_t nodes) {
  SolveResult r;
  r.status = SolveStatus::NoSolutionFound;
  r.nodes = nodes;
  return r;
}

/// Unit propagation over `hard`; false on conflict.
inline bool unit_propagate(const std::vector<std::vector<int>>& hard, Partial& p) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& c : hard) {
      int open = 0, last = 0;
      bool sat = false;
      for (int l : c) {
        int v = lit_value(p, l);
        if (v == 1) {
          sat = true;
          break;
        }
        if (v < 0) {
          ++open;
          last = l;
        }
      }
      if (sat) continue;
      if (open == 0) return false;
      if (open == 1) {
        p[static_cast<std::size_t>(std::abs(last)) - 1] = last > 0 ? 1 : 0;
        changed = true;
      }
    }
  }
  return true;
}

inline SolveResult greedy(const WcnfInstance& inst) {
  const std::size_t n = inst.num_vars();
  std::vector<std::vector<int>> hard;
  for (const auto& c : inst.hard) hard.push_back(c.literals);
  Partial p(n, -1);
  if (!unit_propagate(hard, p)) return no_solution(0);
  for (std::size_t v : decision_order(inst)) {
    if (p[v] >= 0) continue;
    signed char preferred = inst.variables[v].ic > 0.5 ? 1 : 0;
    Partial trial = p;
    trial[v] = preferred;
    if (!unit_propagate(hard, trial)) {
      trial = p;
      trial[v] = static_cast<signed char>(1 - preferred);
      if (!unit_propagate(hard, trial)) return no_solution(0);
    }
    p = std::move(trial);
  }
  Assignment a(n);
  for (std::size_t v = 0; v < n; ++v) a[v] = p[v] == 1;
  double w = *assignment_weight(inst, a);

  // Hill-climb over single flips that keep every hard clause satisfied.
  auto order = decision_order(inst);
  for (bool improved = true; improved;) {
    improved = false;
    for (std::size_t v : order) {
      a[v] = !a[v];
      auto fw = assignment_weight(inst, a);
      if (fw && *fw < w - kEpsilon) {
        w = *fw;
        improved = true;
      } else {
        a[v] = !a[v];
      }
    }
  }
  return {SolveStatus::Feasible, std::move(a), w, n};
}

inline SolveResult beam(const WcnfInstance& inst, std::size_t width) {
  const std::size_t n = inst.num_vars();
  if (width == 0) throw std::invalid_argument("beam width must be positive");
  auto costs = unit_costs(inst);
  std::vector<std::vector<int>> hard;
  for (const auto& c : inst.hard) hard.push_back(c.literals);

  struct Node {
    Partial p;
    double acc;
    double score;
  };
  std::vector<Node> frontier{{Partial(n, -1), 0.0, lower_bound(inst, Partial(n, -1))}};
  std::size_t expanded = 0;
  for (std::size_t v : decision_order(inst)) {
    std::vector<Node> next;
    for (const Node& node : frontier)
      for (signed char val : {0, 1}) {
        Node child = node;
        child.p[v] = val;
        if (std::any_of(hard.begin(), hard.end(), [&](const auto& c) { return falsified(child.p, c); })) continue;
        child.acc += val ? costs.if_true[v] : costs.if_false[v];
        child.score = lower_bound(inst, child.p);
        next.push_back(std::move(child));
        ++expanded;
      }
    std::stable_sort(next.begin(), next.end(), [](const Node& a, const Node& b) { return a.score < b.score; });
    if (next.size() > width) next.resize(width);
    if (next.empty()) return no_solution(expanded);
    frontier = std::move(next);
  }
  SolveResult best;
  best.status = SolveStatus::Feasible;
  best.nodes = expanded;
  for (const Node& node : frontier) {
    Assignment a(n);
    for (std::size_t v = 0; v < n; ++v) a[v] = node.p[v] == 1;
    if (better(inst, node.acc, a, best.weight, best.assignment)) {
      best.weight = node.acc;
      best.assignment = std::move(a);
    }
  }
  if (n == 0) best.weight = 0.0;
  return best;
}

}  // namespace detail

/// Greedy (IC rounding, unit-propagation repair, single-flip hill climbing)
/// or beam search scored by the exact solver's lower bound. No optimality
/// guarantee; a dead end yields NoSolutionFound.
inline SolveResult solve_heuristic(const WcnfInstance& inst, HeuristicOptions opts = {}) {
  return opts.method == HeuristicMethod::Greedy ? detail::greedy(inst) : detail::beam(inst, opts.beam_width);
}

/// Sum over variables of |IC(p) - FPV(p)| + |IC(~p) - FPV(~p)|, where
/// FPV(p) = x_p and FPV(~p) = 1 - x_p.
inline double objective(const BoundsState& s, const WcnfInstance& inst, const Assignment& a) {
  double total = 0.0;
  for (std::size_t v = 0; v < inst.num_vars(); ++v) {
    LiteralId p = *inst.variables[v].literal;
    double fpv = a[v] ? 1.0 : 0.0;
    total += std::fabs(ic(s, p) - fpv) + std::fabs(ic(s, s.graph().complement(p)) - (1.0 - fpv));
  }
  return total;
}

/// Labeling induced by an assignment, without any consistency check.
/// Vertices outside `scope` (when given) that cannot be evaluated keep their
/// lower bound.
inline Labeling evaluate_assignment(const PrimoGraph& g, const BoundsState& s, const WcnfInstance& inst,
                                    const Assignment& a, const std::vector<char>& scope = {}) {
  auto var_of = variable_index(g, inst);
  detail::Evaluator eval(s, var_of);
  eval.reset(&a);
  Labeling lab;
  lab.values.resize(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    lab.values[v] = (scope.empty() || scope[v]) ? eval.value(v) : s[v].lo;
  return lab;
}

/// The admissible labeling an assignment stands for. Throws EncodingError if
/// the assignment does not correspond to one.
inline Labeling decode(const PrimoGraph& g, const BoundsState& s, const WcnfInstance& inst, const Assignment& a) {
  Labeling lab = evaluate_assignment(g, s, inst, a);
  for (std::size_t v = 0; v < inst.num_vars(); ++v) {
    const auto& var = inst.variables[v];
    bool reached = lab[g.literal_vertex(*var.literal)] >= var.alpha;
    if (reached != a[v]) throw EncodingError("assignment disagrees with the labeling it induces at " + var.name);
  }
  if (auto rep = check_admissible(g, s.family(), lab); !rep)
    throw EncodingError("decoded labeling is not admissible at " + g.vertex_name(*rep.vertex));
  return lab;
}

/// The assignment a labeling induces: x_p iff LB(p) reaches p's threshold.
inline Assignment assignment_from(const PrimoGraph& g, const WcnfInstance& inst, const Labeling& lab) {
  Assignment a(inst.num_vars());
  for (std::size_t v = 0; v < inst.num_vars(); ++v)
    a[v] = lab[g.literal_vertex(*inst.variables[v].literal)] >= inst.variables[v].alpha;
  return a;
}

inline std::string format_fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

/// MaxSAT-evaluation text format: `c var` comments, `h` hard clauses, soft
/// clauses prefixed by their weight, 0-terminated.
inline std::string to_wcnf(const WcnfInstance& inst) {
  std::ostringstream out;
  for (std::size_t v = 0; v < inst.num_vars(); ++v) out << "c var " << v + 1 << " = " << inst.variables[v].name << '\n';
  for (const auto& c : inst.hard) {
    out << 'h';
    for (int l : c.literals) out << ' ' << l;
    out << " 0\n";
  }
  for (const auto& c : inst.soft) {
    out << format_fixed(c.weight.value());
    for (int l : c.literals) out << ' ' << l;
    out << " 0\n";
  }
  return out.str();
}

}  // namespace primo
