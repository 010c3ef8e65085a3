// Domain model for the defeasible reasoning engine: literals, justifications,
// the AND/OR dependency graph and the triangular-norm calculi used to label it.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace primo {

/// Tolerance for fixpoint termination and equality assertions. Threshold
/// tests against a nonmonotonic antecedent's alpha never use it.
inline constexpr double kEpsilon = 1e-9;

inline bool nearly_equal(double a, double b, double eps = kEpsilon) {
  return std::fabs(a - b) <= eps;
}

/// A ground proposition. Classical negation gives a distinct node: `P` and
/// `~P` are two literals that only interact through conflict detection.
struct Literal {
  std::string name;
  bool negated = false;

  Literal() = default;
  Literal(std::string n, bool neg = false) : name(std::move(n)), negated(neg) {}

  Literal complement() const { return Literal{name, !negated}; }
  std::string to_string() const { return negated ? "~" + name : name; }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal& a, const Literal& b) {
    if (auto c = a.name <=> b.name; c != 0) return c;
    return a.negated <=> b.negated;
  }
};

/// `not[alpha] target`: 1 unless the target is proven to degree >= alpha.
struct NonmonAntecedent {
  Literal target;
  double alpha = 1.0;
  friend bool operator==(const NonmonAntecedent&, const NonmonAntecedent&) = default;
};

struct Justification {
  std::string id;
  std::vector<Literal> monotonic;
  std::vector<NonmonAntecedent> nonmonotonic;
  double sufficiency = 1.0;
  Literal conclusion;
  friend bool operator==(const Justification&, const Justification&) = default;
};

// ---------------------------------------------------------------------------
// Triangular norms

enum class TNormFamily { MinMax, ProductProbSum, Lukasiewicz };

inline std::string_view to_string(TNormFamily f) {
  switch (f) {
    case TNormFamily::MinMax: return "min";
    case TNormFamily::ProductProbSum: return "product";
    case TNormFamily::Lukasiewicz: return "luka";
  }
  return "?";
}

inline std::optional<TNormFamily> parse_tnorm_family(std::string_view s) {
  if (s == "min") return TNormFamily::MinMax;
  if (s == "product") return TNormFamily::ProductProbSum;
  if (s == "luka") return TNormFamily::Lukasiewicz;
  return std::nullopt;
}

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {
inline void check_unit(double v) {
  if (!(v >= 0.0 && v <= 1.0))
    throw DomainError("certainty value outside [0,1]: " + std::to_string(v));
}
}  // namespace detail

inline double tnorm(TNormFamily f, double a, double b) {
  detail::check_unit(a);
  detail::check_unit(b);
  switch (f) {
    case TNormFamily::MinMax: return std::min(a, b);
    case TNormFamily::ProductProbSum: return a * b;
    case TNormFamily::Lukasiewicz: return std::max(0.0, a + b - 1.0);
  }
  return 0.0;
}

inline double snorm(TNormFamily f, double a, double b) {
  detail::check_unit(a);
  detail::check_unit(b);
  switch (f) {
    case TNormFamily::MinMax: return std::max(a, b);
    case TNormFamily::ProductProbSum: return a == 1.0 || b == 1.0 ? 1.0 : a + b - a * b;
    case TNormFamily::Lukasiewicz: return std::min(1.0, a + b);
  }
  return 0.0;
}

/// Fold of the binary t-norm; the empty fold is the identity 1.
template <class Range>
double tnorm(TNormFamily f, const Range& values) {
  double acc = 1.0;
  for (double v : values) acc = tnorm(f, acc, v);
  return acc;
}

inline double tnorm(TNormFamily f, std::initializer_list<double> values) {
  return tnorm<std::initializer_list<double>>(f, values);
}

/// Fold of the binary s-conorm; the empty fold is the identity 0.
template <class Range>
double snorm(TNormFamily f, const Range& values) {
  double acc = 0.0;
  for (double v : values) acc = snorm(f, acc, v);
  return acc;
}

inline double snorm(TNormFamily f, std::initializer_list<double> values) {
  return snorm<std::initializer_list<double>>(f, values);
}

/// Value of a nonmonotonic antecedent: 0 iff lb >= alpha. The comparison is
/// exact; the boundary belongs to the "proven" side.
inline double eval_nonmon(double alpha, double lb) {
  detail::check_unit(alpha);
  detail::check_unit(lb);
  return lb >= alpha ? 0.0 : 1.0;
}

// ---------------------------------------------------------------------------
// The AND/OR graph

using VertexId = std::size_t;
using LiteralId = std::size_t;
using JustificationId = std::size_t;

enum class EdgeKind { Monotonic, Nonmonotonic };

struct Edge {
  VertexId from;
  VertexId to;
  EdgeKind kind;
};

/// Justification with literal references resolved to ids.
struct CompiledJustification {
  std::vector<LiteralId> monotonic;
  std::vector<std::pair<LiteralId, double>> nonmonotonic;
  double sufficiency = 1.0;
  LiteralId conclusion = 0;
};

/// Bipartite AND/OR graph. Literals are OR-vertices, justifications are
/// AND-vertices. Vertex ids place every literal before every justification,
/// so they are only stable once construction is finished.
class PrimoGraph {
 public:
  /// Interns `lit` together with its complement; returns the id of `lit`.
  LiteralId add_literal(const Literal& lit) {
    if (auto it = index_.find(lit); it != index_.end()) return it->second;
    if (lit.name.empty()) throw std::invalid_argument("literal name must not be empty");
    LiteralId id = literals_.size();
    literals_.push_back(lit);
    index_.emplace(lit, id);
    supporters_.emplace_back();
    inputs_.emplace_back();
    Literal comp = lit.complement();
    if (!index_.contains(comp)) {
      index_.emplace(comp, literals_.size());
      literals_.push_back(comp);
      supporters_.emplace_back();
      inputs_.emplace_back();
    }
    return id;
  }

  void set_input(const Literal& lit, double k) {
    if (!(k >= 0.0 && k <= 1.0))
      throw std::invalid_argument("input confidence outside [0,1] for " + lit.to_string());
    inputs_[add_literal(lit)] = k;
  }

  JustificationId add_justification(Justification j) {
    if (!(j.sufficiency > 0.0 && j.sufficiency <= 1.0))
      throw std::invalid_argument("sufficiency outside (0,1] in rule " + j.id);
    for (const auto& nm : j.nonmonotonic)
      if (!(nm.alpha > 0.0 && nm.alpha <= 1.0))
        throw std::invalid_argument("threshold outside (0,1] in rule " + j.id);
    if (by_id_.contains(j.id)) throw std::invalid_argument("duplicate rule id " + j.id);

    CompiledJustification c;
    c.sufficiency = j.sufficiency;
    for (const auto& m : j.monotonic) c.monotonic.push_back(add_literal(m));
    for (const auto& nm : j.nonmonotonic) c.nonmonotonic.emplace_back(add_literal(nm.target), nm.alpha);
    c.conclusion = add_literal(j.conclusion);

    JustificationId id = justifications_.size();
    supporters_[c.conclusion].push_back(id);
    by_id_.emplace(j.id, id);
    justifications_.push_back(std::move(j));
    compiled_.push_back(std::move(c));
    return id;
  }

  std::size_t num_literals() const { return literals_.size(); }
  std::size_t num_justifications() const { return justifications_.size(); }
  std::size_t num_vertices() const { return literals_.size() + justifications_.size(); }

  const Literal& literal(LiteralId id) const { return literals_.at(id); }
  const Justification& justification(JustificationId id) const { return justifications_.at(id); }
  const CompiledJustification& compiled(JustificationId id) const { return compiled_.at(id); }

  std::optional<LiteralId> find_literal(const Literal& lit) const {
    if (auto it = index_.find(lit); it != index_.end()) return it->second;
    return std::nullopt;
  }
  std::optional<JustificationId> find_justification(std::string_view id) const {
    if (auto it = by_id_.find(std::string(id)); it != by_id_.end()) return it->second;
    return std::nullopt;
  }
  LiteralId literal_id(const Literal& lit) const {
    if (auto id = find_literal(lit)) return *id;
    throw std::out_of_range("unknown literal " + lit.to_string());
  }
  LiteralId complement(LiteralId id) const { return index_.at(literals_[id].complement()); }

  const std::optional<double>& input(LiteralId id) const { return inputs_.at(id); }
  /// Justifications concluding the literal.
  const std::vector<JustificationId>& supporters(LiteralId id) const { return supporters_.at(id); }

  VertexId literal_vertex(LiteralId id) const { return id; }
  VertexId justification_vertex(JustificationId id) const { return literals_.size() + id; }
  bool is_justification(VertexId v) const { return v >= literals_.size(); }
  JustificationId justification_of(VertexId v) const { return v - literals_.size(); }

  std::string vertex_name(VertexId v) const {
    return is_justification(v) ? justifications_[justification_of(v)].id : literals_[v].to_string();
  }

  /// All edges: antecedent literal -> justification (tagged by antecedent
  /// kind) and justification -> conclusion (monotonic).
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (JustificationId j = 0; j < compiled_.size(); ++j) {
      const auto& c = compiled_[j];
      VertexId jv = justification_vertex(j);
      for (LiteralId m : c.monotonic) out.push_back({literal_vertex(m), jv, EdgeKind::Monotonic});
      for (const auto& [t, alpha] : c.nonmonotonic)
        out.push_back({literal_vertex(t), jv, EdgeKind::Nonmonotonic});
      out.push_back({jv, literal_vertex(c.conclusion), EdgeKind::Monotonic});
    }
    return out;
  }

  /// Outgoing adjacency over all edges, optionally monotonic edges only.
  std::vector<std::vector<std::pair<VertexId, EdgeKind>>> adjacency(bool monotonic_only = false) const {
    std::vector<std::vector<std::pair<VertexId, EdgeKind>>> adj(num_vertices());
    for (const Edge& e : edges()) {
      if (monotonic_only && e.kind != EdgeKind::Monotonic) continue;
      adj[e.from].emplace_back(e.to, e.kind);
    }
    return adj;
  }

 private:
  std::vector<Literal> literals_;
  std::map<Literal, LiteralId> index_;
  std::vector<std::optional<double>> inputs_;
  std::vector<std::vector<JustificationId>> supporters_;
  std::vector<Justification> justifications_;
  std::vector<CompiledJustification> compiled_;
  std::map<std::string, JustificationId, std::less<>> by_id_;
};

/// Lower and upper bound on the exact certainty of a vertex.
struct CertaintyInterval {
  double lo = 0.0;
  double hi = 1.0;

  bool exact(double eps = kEpsilon) const { return hi - lo <= eps; }
  double midpoint() const { return (lo + hi) / 2.0; }
  bool contains(double v, double eps = kEpsilon) const { return v >= lo - eps && v <= hi + eps; }
  friend bool operator==(const CertaintyInterval&, const CertaintyInterval&) = default;
};

/// Exact certainty per vertex (literals first, then justifications). Arc
/// labels are the values of their source vertices.
struct Labeling {
  std::vector<double> values;

  double operator[](VertexId v) const { return values.at(v); }
  double of(const PrimoGraph& g, const Literal& lit) const { return values.at(g.literal_vertex(g.literal_id(lit))); }
};

}  // namespace primo
