// Admissible labelings: the two labeling conditions, starter dependencies,
// and depth-first enumeration by forcing starters to LB- or LB+.
#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "primo/core.hpp"
#include "primo/graph_algo.hpp"
#include "primo/propagate.hpp"

namespace primo {

struct AdmissibilityReport {
  bool ok = true;
  /// 1: justification differs from the t-norm of its inputs.
  /// 2: literal differs from the s-conorm of its supports.
  int violated_condition = 0;
  std::optional<VertexId> vertex;
  double expected = 0.0;
  double actual = 0.0;

  explicit operator bool() const { return ok; }
};

inline AdmissibilityReport check_admissible(const PrimoGraph& g, TNormFamily family, const Labeling& lab) {
  if (lab.values.size() != g.num_vertices()) throw std::invalid_argument("labeling does not cover the graph");
  for (JustificationId j = 0; j < g.num_justifications(); ++j) {
    const auto& c = g.compiled(j);
    double expected = c.sufficiency;
    for (LiteralId m : c.monotonic) expected = tnorm(family, expected, lab[g.literal_vertex(m)]);
    for (const auto& [t, alpha] : c.nonmonotonic)
      expected = tnorm(family, expected, eval_nonmon(alpha, lab[g.literal_vertex(t)]));
    VertexId v = g.justification_vertex(j);
    if (!nearly_equal(expected, lab[v])) return {false, 1, v, expected, lab[v]};
  }
  for (LiteralId l = 0; l < g.num_literals(); ++l) {
    double expected = g.input(l).value_or(0.0);
    for (JustificationId j : g.supporters(l)) expected = snorm(family, expected, lab[g.justification_vertex(j)]);
    VertexId v = g.literal_vertex(l);
    if (!nearly_equal(expected, lab[v])) return {false, 2, v, expected, lab[v]};
  }
  return {};
}

enum class ForceChoice { Lo, Hi };

struct StarterDependency {
  JustificationId justification;
  CertaintyInterval bounds;
  ForceChoice choice = ForceChoice::Lo;
};

/// Raised when a stable, partially labeled state has no starter dependency.
/// Valid graphs never get here.
class MissingStarterError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// AND-vertices with every monotonic antecedent exact, no exceeded and at
/// least one ambiguous nonmonotonic antecedent. Ordered by condensation
/// component (dependencies first), then rule id.
inline std::vector<StarterDependency> find_starters(const BoundsState& s, const Condensation& cond) {
  const PrimoGraph& g = s.graph();
  std::vector<StarterDependency> out;
  for (JustificationId j = 0; j < g.num_justifications(); ++j) {
    VertexId v = g.justification_vertex(j);
    if (s.pinned(v) || s[v].exact()) continue;
    const auto& c = g.compiled(j);
    bool mono_exact = std::all_of(c.monotonic.begin(), c.monotonic.end(),
                                  [&](LiteralId m) { return s[g.literal_vertex(m)].exact(); });
    if (!mono_exact) continue;
    bool exceeded = false, ambiguous = false;
    for (const auto& [t, alpha] : c.nonmonotonic) {
      auto st = classify(s, t, alpha);
      exceeded |= st == AntecedentStatus::Exceeded;
      ambiguous |= st == AntecedentStatus::Ambiguous;
    }
    if (!exceeded && ambiguous) out.push_back({j, s[v]});
  }
  std::sort(out.begin(), out.end(), [&](const StarterDependency& a, const StarterDependency& b) {
    auto ca = cond.component_of[g.justification_vertex(a.justification)];
    auto cb = cond.component_of[g.justification_vertex(b.justification)];
    if (ca != cb) return ca < cb;
    return g.justification(a.justification).id < g.justification(b.justification).id;
  });
  return out;
}

inline std::vector<StarterDependency> find_starters(const BoundsState& s) { return find_starters(s, condense(s.graph())); }

inline Labeling labeling_from(const BoundsState& s) {
  Labeling lab;
  lab.values.reserve(s.size());
  for (const auto& b : s.bounds()) lab.values.push_back(b.lo);
  return lab;
}

struct EnumerationResult {
  std::vector<Labeling> labelings;
  bool truncated = false;
  std::size_t nodes = 0;      // search tree nodes visited
  std::size_t max_depth = 0;  // deepest chain of forced starters
};

inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

namespace detail {

class Enumerator {
 public:
  Enumerator(const PrimoGraph& g, std::size_t max_count) : g_(g), cond_(condense(g)), max_(max_count) {}

  void run(BoundsState s, std::size_t depth) {
    if (result.labelings.size() >= max_) {
      result.truncated = true;
      return;
    }
    ++result.nodes;
    result.max_depth = std::max(result.max_depth, depth);
    if (propagate(s)) return;
    if (s.fully_exact()) {
      Labeling lab = labeling_from(s);
      if (!check_admissible(g_, s.family(), lab))
        throw std::logic_error("enumeration produced an inadmissible labeling");
      result.labelings.push_back(std::move(lab));
      return;
    }
    auto starters = find_starters(s, cond_);
    if (starters.empty())
      throw MissingStarterError("stable graph is not fully labeled but has no starter dependency");
    VertexId v = g_.justification_vertex(starters.front().justification);
    double high = s[v].hi;
    BoundsState lo = s;
    lo.pin(v, 0.0);
    run(std::move(lo), depth + 1);
    s.pin(v, high);
    run(std::move(s), depth + 1);
  }

  EnumerationResult result;

 private:
  const PrimoGraph& g_;
  Condensation cond_;
  std::size_t max_;
};

}  // namespace detail

/// All admissible labelings (up to `max_count`), FORCE_LO branch first.
/// Throws std::invalid_argument on graphs with a monotonic cycle.
inline EnumerationResult enumerate(const PrimoGraph& g, TNormFamily family = TNormFamily::ProductProbSum,
                                   std::size_t max_count = kUnbounded) {
  if (!validate_graph(g).ok()) throw std::invalid_argument("graph contains a monotonic cycle");
  detail::Enumerator e(g, max_count);
  e.run(initialize(g, family), 0);
  return std::move(e.result);
}

}  // namespace primo
