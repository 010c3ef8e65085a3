// Bounds propagation: every vertex carries [LB-, LB+] and is relabeled until
// it equals the bounds recomputed from its antecedents. The result does not
// depend on the propagation order.
#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "primo/core.hpp"

namespace primo {

enum class AntecedentStatus { Satisfied, Exceeded, Ambiguous };

inline std::string_view to_string(AntecedentStatus s) {
  switch (s) {
    case AntecedentStatus::Satisfied: return "satisfied";
    case AntecedentStatus::Exceeded: return "exceeded";
    case AntecedentStatus::Ambiguous: return "ambiguous";
  }
  return "?";
}

/// Per-vertex certainty intervals plus pins. A pinned vertex keeps its label
/// as a constant; propagation still recomputes its bounds so it can detect
/// when the pin has become unsupportable.
class BoundsState {
 public:
  BoundsState(const PrimoGraph& g, TNormFamily family) : graph_(&g), family_(family) {
    bounds_.assign(g.num_vertices(), CertaintyInterval{0.0, 1.0});
    pins_.assign(g.num_vertices(), std::nullopt);
    auto deps = std::make_shared<std::vector<std::vector<VertexId>>>(g.num_vertices());
    for (const Edge& e : g.edges()) {
      auto& d = (*deps)[e.from];
      if (d.empty() || d.back() != e.to) d.push_back(e.to);
    }
    dependents_ = std::move(deps);
  }

  const PrimoGraph& graph() const { return *graph_; }
  TNormFamily family() const { return family_; }
  std::size_t size() const { return bounds_.size(); }

  const CertaintyInterval& operator[](VertexId v) const { return bounds_.at(v); }
  const CertaintyInterval& of(const Literal& lit) const {
    return bounds_.at(graph_->literal_vertex(graph_->literal_id(lit)));
  }
  const std::vector<CertaintyInterval>& bounds() const { return bounds_; }

  void set(VertexId v, CertaintyInterval b) { bounds_.at(v) = b; }

  void pin(VertexId v, double value) {
    pins_.at(v) = value;
    bounds_[v] = {value, value};
  }
  const std::optional<double>& pinned(VertexId v) const { return pins_.at(v); }

  const std::vector<VertexId>& dependents(VertexId v) const { return (*dependents_)[v]; }

  /// True when every vertex is labeled exactly.
  bool fully_exact() const {
    for (const auto& b : bounds_)
      if (!b.exact()) return false;
    return true;
  }

  std::size_t relabels() const { return relabels_; }
  void count_relabel() { ++relabels_; }

 private:
  const PrimoGraph* graph_;
  TNormFamily family_;
  std::vector<CertaintyInterval> bounds_;
  std::vector<std::optional<double>> pins_;
  std::shared_ptr<const std::vector<std::vector<VertexId>>> dependents_;
  std::size_t relabels_ = 0;
};

/// Inputs start at [k, 1] ("at least k"), everything else at [0, 1].
inline BoundsState initialize(const PrimoGraph& g, TNormFamily family = TNormFamily::ProductProbSum) {
  BoundsState s(g, family);
  for (LiteralId l = 0; l < g.num_literals(); ++l)
    if (const auto& k = g.input(l)) s.set(g.literal_vertex(l), {*k, 1.0});
  return s;
}

namespace detail {

// Shared by both bounds: `lower` selects lo of monotonic antecedents and hi
// of nonmonotonic targets; the upper bound uses the opposite ends.
inline double recompute(const BoundsState& s, VertexId v, bool lower) {
  const PrimoGraph& g = s.graph();
  if (g.is_justification(v)) {
    const auto& c = g.compiled(g.justification_of(v));
    double acc = c.sufficiency;
    for (LiteralId m : c.monotonic) {
      const auto& b = s[g.literal_vertex(m)];
      acc = tnorm(s.family(), acc, lower ? b.lo : b.hi);
    }
    for (const auto& [t, alpha] : c.nonmonotonic) {
      const auto& b = s[g.literal_vertex(t)];
      acc = tnorm(s.family(), acc, eval_nonmon(alpha, lower ? b.hi : b.lo));
    }
    return acc;
  }
  double acc = g.input(v).value_or(0.0);
  for (JustificationId j : g.supporters(v)) {
    const auto& b = s[g.justification_vertex(j)];
    acc = snorm(s.family(), acc, lower ? b.lo : b.hi);
  }
  return acc;
}

}  // namespace detail

inline double lb_minus(const BoundsState& s, VertexId v) { return detail::recompute(s, v, true); }
inline double lb_plus(const BoundsState& s, VertexId v) { return detail::recompute(s, v, false); }

inline CertaintyInterval recomputed(const BoundsState& s, VertexId v) { return {lb_minus(s, v), lb_plus(s, v)}; }

struct Inconsistency {
  enum class Kind {
    BoundCrossing,  // lo > hi on an unpinned vertex
    GainedSupport,  // pinned low, but its antecedents now force more
    LostSupport,    // pinned high, but its antecedents can no longer reach it
  };
  VertexId vertex;
  Kind kind;
  CertaintyInterval computed;
};

struct PropagationOptions {
  /// When set, the worklist is processed in a seeded random order instead of
  /// FIFO. Used to exercise order independence.
  std::optional<std::uint64_t> shuffle_seed;
  /// Called as (vertex, old label, new label) on every relabel.
  std::function<void(VertexId, const CertaintyInterval&, const CertaintyInterval&)> on_relabel;
  /// Safety valve for graphs that violate the no-monotonic-cycle rule.
  std::size_t max_relabels = 10'000'000;
};

/// Relabels vertices until every label equals its recomputed bounds (within
/// kEpsilon). Returns the first inconsistency met, leaving the state as it
/// was at that point.
inline std::optional<Inconsistency> propagate(BoundsState& s, const PropagationOptions& opts = {}) {
  const std::size_t n = s.size();
  std::vector<VertexId> work(n);
  std::iota(work.begin(), work.end(), VertexId{0});
  std::vector<char> queued(n, 1);
  std::optional<std::mt19937_64> rng;
  if (opts.shuffle_seed) {
    rng.emplace(*opts.shuffle_seed);
    std::shuffle(work.begin(), work.end(), *rng);
  }
  std::deque<VertexId> fifo(work.begin(), work.end());

  auto pop = [&]() {
    VertexId v;
    if (rng) {
      std::uniform_int_distribution<std::size_t> pick(0, fifo.size() - 1);
      auto it = fifo.begin() + static_cast<std::ptrdiff_t>(pick(*rng));
      v = *it;
      fifo.erase(it);
    } else {
      v = fifo.front();
      fifo.pop_front();
    }
    queued[v] = 0;
    return v;
  };

  std::size_t budget = 0;
  while (!fifo.empty()) {
    VertexId v = pop();
    CertaintyInterval c = recomputed(s, v);
    if (const auto& p = s.pinned(v)) {
      if (c.lo > *p + kEpsilon) return Inconsistency{v, Inconsistency::Kind::GainedSupport, c};
      if (c.hi < *p - kEpsilon) return Inconsistency{v, Inconsistency::Kind::LostSupport, c};
      continue;
    }
    if (c.lo > c.hi + kEpsilon) return Inconsistency{v, Inconsistency::Kind::BoundCrossing, c};
    // Round-off crossing: collapse so threshold tests on both ends agree.
    if (c.lo > c.hi) c.hi = c.lo;
    const CertaintyInterval old = s[v];
    if (nearly_equal(old.lo, c.lo) && nearly_equal(old.hi, c.hi)) continue;
    if (++budget > opts.max_relabels)
      throw std::runtime_error("bounds propagation did not converge (monotonic cycle?)");
    s.set(v, c);
    s.count_relabel();
    if (opts.on_relabel) opts.on_relabel(v, old, c);
    for (VertexId w : s.dependents(v))
      if (!queued[w]) {
        queued[w] = 1;
        fifo.push_back(w);
      }
  }
  return std::nullopt;
}

inline AntecedentStatus classify(const BoundsState& s, LiteralId target, double alpha) {
  const auto& b = s[s.graph().literal_vertex(target)];
  if (b.hi < alpha) return AntecedentStatus::Satisfied;
  if (b.lo >= alpha) return AntecedentStatus::Exceeded;
  return AntecedentStatus::Ambiguous;
}

inline AntecedentStatus classify(const BoundsState& s, const NonmonAntecedent& a) {
  return classify(s, s.graph().literal_id(a.target), a.alpha);
}

}  // namespace primo
