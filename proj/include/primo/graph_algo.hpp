// Structural analyses over a PrimoGraph: validity, SCC condensation, odd
// loops, and LB(P) + LB(~P) > 1 conflict detection.
#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "primo/core.hpp"

namespace primo {

/// A cycle as a closed vertex sequence; the first vertex is repeated last.
using Cycle = std::vector<VertexId>;

struct ValidationReport {
  std::vector<Cycle> monotonic_cycles;
  bool ok() const { return monotonic_cycles.empty(); }
};

namespace detail {

/// Iterative Tarjan. Components come out sinks first.
inline std::vector<std::vector<VertexId>> tarjan(const std::vector<std::vector<VertexId>>& adj) {
  const std::size_t n = adj.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<VertexId> stack;
  std::vector<std::vector<VertexId>> out;
  std::size_t counter = 0;

  struct Frame {
    VertexId v;
    std::size_t next;
  };
  std::vector<Frame> call;
  for (VertexId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < adj[f.v].size()) {
        VertexId w = adj[f.v][f.next++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      VertexId v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<VertexId> comp;
        VertexId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
    }
  }
  return out;
}

inline std::vector<std::vector<VertexId>> plain_adjacency(const PrimoGraph& g, bool monotonic_only) {
  std::vector<std::vector<VertexId>> adj(g.num_vertices());
  for (const Edge& e : g.edges())
    if (!monotonic_only || e.kind == EdgeKind::Monotonic) adj[e.from].push_back(e.to);
  return adj;
}

/// Some simple cycle through `start` inside `members` (BFS shortest).
inline Cycle cycle_through(const std::vector<std::vector<VertexId>>& adj, const std::vector<char>& members,
                           VertexId start) {
  std::vector<VertexId> parent(adj.size(), static_cast<VertexId>(-1));
  std::vector<VertexId> queue{start};
  std::vector<char> seen(adj.size(), 0);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    VertexId v = queue[head];
    for (VertexId w : adj[v]) {
      if (!members[w]) continue;
      if (w == start) {
        Cycle c{start};
        std::vector<VertexId> back;
        for (VertexId x = v; x != start; x = parent[x]) back.push_back(x);
        c.insert(c.end(), back.rbegin(), back.rend());
        c.push_back(start);
        return c;
      }
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = v;
        queue.push_back(w);
      }
    }
  }
  return {};
}

}  // namespace detail

/// Reports one witness cycle per monotonic strongly connected component that
/// is not a lone vertex without a self loop.
inline ValidationReport validate_graph(const PrimoGraph& g) {
  ValidationReport report;
  auto adj = detail::plain_adjacency(g, /*monotonic_only=*/true);
  auto comps = detail::tarjan(adj);
  std::reverse(comps.begin(), comps.end());
  for (const auto& comp : comps) {
    VertexId v = comp.front();
    bool self_loop = std::find(adj[v].begin(), adj[v].end(), v) != adj[v].end();
    if (comp.size() == 1 && !self_loop) continue;
    std::vector<char> members(g.num_vertices(), 0);
    for (VertexId w : comp) members[w] = 1;
    report.monotonic_cycles.push_back(detail::cycle_through(adj, members, v));
  }
  return report;
}

/// Strongly connected components over all edges, dependencies first: every
/// edge goes from an earlier (or the same) component to a later one.
struct Condensation {
  std::vector<std::vector<VertexId>> components;
  std::vector<std::size_t> component_of;  // per vertex
};

inline Condensation condense(const PrimoGraph& g) {
  Condensation c;
  c.components = detail::tarjan(detail::plain_adjacency(g, false));
  std::reverse(c.components.begin(), c.components.end());
  c.component_of.assign(g.num_vertices(), 0);
  for (std::size_t i = 0; i < c.components.size(); ++i)
    for (VertexId v : c.components[i]) c.component_of[v] = i;
  return c;
}

struct OddLoopOptions {
  /// Stop after this many odd cycles have been reported.
  std::size_t max_cycles = 64;
  /// DFS step budget for simple-cycle enumeration. When it runs out and an
  /// odd loop is known to exist, one witness is extracted directly.
  std::size_t step_budget = 200000;
};

/// Simple cycles crossing an odd number of nonmonotonic edges. Existence is
/// decided exactly on the parity-doubled graph (an odd closed walk always
/// contains an odd simple cycle), so an empty result means no odd loop.
inline std::vector<Cycle> detect_odd_loops(const PrimoGraph& g, OddLoopOptions opts = {}) {
  const std::size_t n = g.num_vertices();
  auto adj = g.adjacency();
  // Parity-doubled reachability: (v,0) ->* (v,1) within one SCC.
  std::vector<std::vector<VertexId>> doubled(2 * n);
  for (VertexId v = 0; v < n; ++v)
    for (const auto& [w, kind] : adj[v]) {
      std::size_t flip = kind == EdgeKind::Nonmonotonic ? 1 : 0;
      doubled[2 * v].push_back(2 * w + flip);
      doubled[2 * v + 1].push_back(2 * w + (1 - flip));
    }
  auto dcomps = detail::tarjan(doubled);
  std::vector<std::size_t> dcomp(2 * n);
  for (std::size_t i = 0; i < dcomps.size(); ++i)
    for (VertexId v : dcomps[i]) dcomp[v] = i;
  std::vector<VertexId> odd_roots;
  for (VertexId v = 0; v < n; ++v)
    if (dcomp[2 * v] == dcomp[2 * v + 1]) odd_roots.push_back(v);
  if (odd_roots.empty()) return {};

  // Enumerate simple cycles whose smallest vertex is `start`, restricted to
  // the start's SCC.
  auto cond = condense(g);
  std::vector<Cycle> found;
  std::size_t steps = 0;
  std::vector<VertexId> path;
  std::vector<char> on_path(n, 0);
  std::function<void(VertexId, VertexId, bool)> dfs = [&](VertexId start, VertexId v, bool parity) {
    for (const auto& [w, kind] : adj[v]) {
      if (found.size() >= opts.max_cycles || ++steps > opts.step_budget) return;
      if (w < start || cond.component_of[w] != cond.component_of[start]) continue;
      bool p = parity != (kind == EdgeKind::Nonmonotonic);
      if (w == start) {
        if (p) {
          Cycle c = path;
          c.push_back(start);
          found.push_back(std::move(c));
        }
      } else if (!on_path[w]) {
        on_path[w] = 1;
        path.push_back(w);
        dfs(start, w, p);
        path.pop_back();
        on_path[w] = 0;
      }
    }
  };
  for (VertexId s = 0; s < n && found.size() < opts.max_cycles && steps <= opts.step_budget; ++s) {
    path = {s};
    on_path[s] = 1;
    dfs(s, s, false);
    on_path[s] = 0;
  }
  if (!found.empty()) return found;

  // Budget exhausted: walk (r,0) -> (r,1) in the doubled graph and peel simple
  // cycles off the closed walk until an odd one appears. A peeled cycle's
  // parity is the xor of the doubled parities at its two ends.
  VertexId r = odd_roots.front();
  std::vector<VertexId> parent(2 * n, static_cast<VertexId>(-1));
  std::vector<char> seen(2 * n, 0);
  std::vector<VertexId> queue{2 * r};
  seen[2 * r] = 1;
  for (std::size_t head = 0; head < queue.size() && !seen[2 * r + 1]; ++head)
    for (VertexId w : doubled[queue[head]])
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = queue[head];
        queue.push_back(w);
      }
  std::vector<VertexId> walk;
  for (VertexId x = 2 * r + 1; x != 2 * r; x = parent[x]) walk.push_back(x);
  walk.push_back(2 * r);
  std::reverse(walk.begin(), walk.end());
  std::vector<VertexId> stack_walk;
  for (VertexId x : walk) {
    auto it = std::find_if(stack_walk.begin(), stack_walk.end(), [&](VertexId y) { return y / 2 == x / 2; });
    if (it != stack_walk.end()) {
      if ((*it % 2) != (x % 2)) {
        Cycle c;
        for (auto k = it; k != stack_walk.end(); ++k) c.push_back(*k / 2);
        c.push_back(x / 2);
        return {c};
      }
      stack_walk.erase(it + 1, stack_walk.end());
    } else {
      stack_walk.push_back(x);
    }
  }
  return {};  // unreachable: the parities of the peeled cycles sum to odd
}

/// Positive literals P with LB(P) + LB(~P) > 1 (both believed).
inline std::vector<LiteralId> check_conflict(const PrimoGraph& g, const Labeling& lab) {
  std::vector<LiteralId> out;
  for (LiteralId p = 0; p < g.num_literals(); ++p) {
    if (g.literal(p).negated) continue;
    LiteralId q = g.complement(p);
    if (lab[g.literal_vertex(p)] + lab[g.literal_vertex(q)] > 1.0 + kEpsilon) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [&](LiteralId a, LiteralId b) { return g.literal(a) < g.literal(b); });
  return out;
}

inline std::string format_cycle(const PrimoGraph& g, const Cycle& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += " -> ";
    s += g.vertex_name(c[i]);
  }
  return s;
}

}  // namespace primo
