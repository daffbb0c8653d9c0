#pragma once

// Shared fixtures and independent oracles for the test suites. Oracles
// deliberately use different algorithms than the library (path/cycle
// enumeration by DFS instead of DAG dynamic programming, forward orbit
// walks instead of reverse layering) so they can vouch for it.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "dominet/clover.hpp"
#include "dominet/landscape.hpp"
#include "dominet/netcore.hpp"
#include "dominet/rng.hpp"

namespace testutil {

using namespace dominet;

inline BooleanNetwork fig1_network() {
  std::vector<LocalRule> rules(5);
  rules[0] = {{3}, negation_table()};
  rules[1] = {{4}, negation_table()};
  rules[2] = {{1}, identity_table()};
  rules[3] = {{1, 2}, {1, 0, 0, 1}};  // x1 * x2
  rules[4] = {{4}, identity_table()};
  return BooleanNetwork(std::move(rules));
}

inline BooleanNetwork fig3_network() {
  std::vector<LocalRule> rules(5);
  rules[0] = {{2, 3}, {1, 0, 0, 1}};  // x2 * x3
  rules[1] = {{1}, identity_table()};
  rules[2] = {{1}, negation_table()};
  rules[3] = {{2, 3}, {0, 1, 1, 0}};  // -x2 * x3
  rules[4] = {{4}, negation_table()};
  return BooleanNetwork(std::move(rules));
}

// Four petals of length 2 through the center, arc signs as drawn:
// 1->2 -, 2->1 +, 1->3 -, 3->1 +, 1->4 +, 4->1 +, 1->5 +, 5->1 -.
inline CloverNetwork fig4_clover() {
  CloverNetwork clover;
  clover.n = 5;
  clover.cycles = {{1, 2}, {1, 3}, {1, 4}, {1, 5}};
  clover.signs = {{{1, 2}, -1}, {{2, 1}, +1}, {{1, 3}, -1}, {{3, 1}, +1},
                  {{1, 4}, +1}, {{4, 1}, +1}, {{1, 5}, +1}, {{5, 1}, -1}};
  return clover;
}

inline bool same_network(const BooleanNetwork& a, const BooleanNetwork& b) {
  if (a.vertex_count() != b.vertex_count()) return false;
  for (Vertex v = 1; v <= a.vertex_count(); ++v)
    if (a.rule(v).inputs != b.rule(v).inputs || a.rule(v).table != b.rule(v).table) return false;
  return true;
}

// Random network with in-degrees 1..min(3,n) and uniform random tables.
inline BooleanNetwork random_network(int n, SplitMix64& rng) {
  std::vector<LocalRule> rules(n);
  for (Vertex v = 1; v <= n; ++v) {
    const int k = 1 + static_cast<int>(rng.next() % std::min(3, n));
    std::set<Vertex> chosen;
    while (static_cast<int>(chosen.size()) < k)
      chosen.insert(1 + static_cast<int>(rng.next() % n));
    std::vector<std::uint8_t> table(1ULL << k);
    for (auto& e : table) e = rng.next() & 1;
    rules[v - 1] = {{chosen.begin(), chosen.end()}, std::move(table)};
  }
  return BooleanNetwork(std::move(rules));
}

// Cycle detection on the subgraph avoiding `blocked`, by DFS coloring.
inline bool has_cycle_avoiding(const DirectedGraph& g, const std::set<Vertex>& blocked) {
  const int n = g.vertex_count();
  std::vector<int> color(n + 1, 0);  // 0 white, 1 gray, 2 black
  bool found = false;
  auto dfs = [&](auto&& self, Vertex v) -> void {
    color[v] = 1;
    for (Vertex w : g.outputs(v)) {
      if (blocked.count(w) || found) continue;
      if (color[w] == 1) {
        found = true;
        return;
      }
      if (color[w] == 0) self(self, w);
    }
    color[v] = 2;
  };
  for (Vertex v = 1; v <= n && !found; ++v)
    if (!blocked.count(v) && color[v] == 0) dfs(dfs, v);
  return found;
}

inline bool is_dominant_oracle(const DirectedGraph& g, const std::vector<Vertex>& u) {
  return !has_cycle_avoiding(g, {u.begin(), u.end()});
}

// All lengths of simple paths from->to with interior avoiding u, by
// exhaustive DFS over interior vertices.
inline std::set<int> path_lengths_oracle(const DirectedGraph& g, const std::vector<Vertex>& u,
                                         Vertex from, Vertex to) {
  std::set<Vertex> u_set(u.begin(), u.end());
  std::set<int> lengths;
  std::set<Vertex> visited;
  auto dfs = [&](auto&& self, Vertex v, int len) -> void {
    for (Vertex w : g.outputs(v)) {
      if (w == to) lengths.insert(len + 1);
      if (!u_set.count(w) && !visited.count(w)) {
        visited.insert(w);
        self(self, w, len + 1);
        visited.erase(w);
      }
    }
  };
  dfs(dfs, from, 0);
  return lengths;
}

// Transient and eventual period of one state by plain forward walking.
struct OrbitFacts {
  int transient = 0;
  int period = 0;
};

inline OrbitFacts orbit_oracle(const TransitionDiagram& diagram, std::uint32_t start) {
  std::map<std::uint32_t, int> seen;
  std::uint32_t s = start;
  int t = 0;
  while (!seen.count(s)) {
    seen[s] = t++;
    s = diagram.successor[s];
  }
  return {seen[s], t - seen[s]};
}

}  // namespace testutil
