#include "dominet/dominance.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include <fmt/format.h>

namespace dominet {

namespace {

std::uint64_t to_mask(int n, std::span<const Vertex> vs) {
  std::uint64_t mask = 0;
  for (Vertex v : vs) {
    if (v < 1 || v > n) throw std::invalid_argument(fmt::format("vertex {} outside 1..{}", v, n));
    mask |= 1ULL << (v - 1);
  }
  return mask;
}

std::vector<Vertex> to_vertices(int n, std::uint64_t mask) {
  std::vector<Vertex> vs;
  for (Vertex v = 1; v <= n; ++v)
    if (mask >> (v - 1) & 1) vs.push_back(v);
  return vs;
}

bool contains(std::uint64_t mask, Vertex v) { return mask >> (v - 1) & 1; }

std::uint64_t boundary_mask(const DirectedGraph& graph, std::uint64_t w) {
  std::uint64_t result = 0;
  for (Vertex v = 1; v <= graph.vertex_count(); ++v) {
    bool inside = true;
    for (Vertex u : graph.inputs(v))
      if (!contains(w, u)) {
        inside = false;
        break;
      }
    if (inside) result |= 1ULL << (v - 1);
  }
  return result;
}

// Acyclicity of the subgraph induced on `allowed`, by repeatedly peeling
// vertices with no remaining in-arc.
bool induced_subgraph_acyclic(const DirectedGraph& graph, std::uint64_t allowed) {
  const int n = graph.vertex_count();
  std::vector<int> indeg(n + 1, 0);
  int remaining = 0;
  for (Vertex v = 1; v <= n; ++v) {
    if (!contains(allowed, v)) continue;
    ++remaining;
    for (Vertex u : graph.inputs(v))
      if (contains(allowed, u)) ++indeg[v];
  }
  std::vector<Vertex> ready;
  for (Vertex v = 1; v <= n; ++v)
    if (contains(allowed, v) && indeg[v] == 0) ready.push_back(v);
  while (!ready.empty()) {
    Vertex u = ready.back();
    ready.pop_back();
    --remaining;
    for (Vertex v : graph.outputs(u))
      if (contains(allowed, v) && --indeg[v] == 0) ready.push_back(v);
  }
  return remaining == 0;
}

// Reverse topological order of the subgraph induced on `allowed`
// (successors before predecessors). Empty when it has a cycle.
std::vector<Vertex> reverse_topological(const DirectedGraph& graph, std::uint64_t allowed) {
  const int n = graph.vertex_count();
  std::vector<int> outdeg(n + 1, 0);
  int total = 0;
  for (Vertex v = 1; v <= n; ++v) {
    if (!contains(allowed, v)) continue;
    ++total;
    for (Vertex w : graph.outputs(v))
      if (contains(allowed, w)) ++outdeg[v];
  }
  std::vector<Vertex> order;
  std::vector<Vertex> ready;
  for (Vertex v = 1; v <= n; ++v)
    if (contains(allowed, v) && outdeg[v] == 0) ready.push_back(v);
  while (!ready.empty()) {
    Vertex v = ready.back();
    ready.pop_back();
    order.push_back(v);
    for (Vertex u : graph.inputs(v))
      if (contains(allowed, u) && --outdeg[u] == 0) ready.push_back(u);
  }
  if (static_cast<int>(order.size()) != total) return {};
  return order;
}

// Length sets as bitmasks: bit k set means a path of length k exists
// (k <= 63, enough since lengths never exceed the vertex count).
struct PathLengthTable {
  // lengths[v] = set of lengths of u-interior-free paths from v to the
  // fixed target, where v ranges over interior vertices or sources.
  std::vector<std::uint64_t> to_target;  // indexed by vertex-1, interior only
};

// For each interior vertex w, the set of lengths of paths w -> ... -> target
// with every vertex before target interior (not in u). Computed by dynamic
// programming over the acyclic interior.
std::vector<std::uint64_t> interior_lengths_to(const DirectedGraph& graph, std::uint64_t u_mask,
                                               Vertex target, std::span<const Vertex> rev_topo) {
  const int n = graph.vertex_count();
  std::vector<std::uint64_t> lengths(n + 1, 0);
  for (Vertex w : rev_topo) {
    std::uint64_t set = 0;
    for (Vertex x : graph.outputs(w)) {
      if (x == target) set |= 1ULL << 1;
      if (!contains(u_mask, x)) set |= lengths[x] << 1;
    }
    lengths[w] = set;
  }
  return lengths;
}

std::map<std::pair<Vertex, Vertex>, std::uint64_t> all_path_length_masks(
    const DirectedGraph& graph, std::span<const Vertex> u) {
  const int n = graph.vertex_count();
  const std::uint64_t u_mask = to_mask(n, u);
  const std::uint64_t interior = ((n == 64 ? ~0ULL : (1ULL << n) - 1)) & ~u_mask;
  auto rev_topo = reverse_topological(graph, interior);
  if (interior != 0 && rev_topo.empty())
    throw NotDominantError("complement of the candidate set has a cycle");
  std::map<std::pair<Vertex, Vertex>, std::uint64_t> result;
  for (Vertex target : u) {
    auto lengths = interior_lengths_to(graph, u_mask, target, rev_topo);
    for (Vertex source : u) {
      std::uint64_t set = 0;
      for (Vertex x : graph.outputs(source)) {
        if (x == target) set |= 1ULL << 1;
        if (!contains(u_mask, x)) set |= lengths[x] << 1;
      }
      if (set != 0) result[{source, target}] = set;
    }
  }
  return result;
}

std::vector<int> mask_to_lengths(std::uint64_t mask) {
  std::vector<int> lengths;
  for (int k = 1; k < 64; ++k)
    if (mask >> k & 1) lengths.push_back(k);
  return lengths;
}

// Shortest directed cycle whose vertices avoid `blocked`; empty if none.
std::vector<Vertex> shortest_cycle_avoiding(const DirectedGraph& graph, std::uint64_t blocked) {
  const int n = graph.vertex_count();
  std::vector<Vertex> best;
  for (Vertex s = 1; s <= n; ++s) {
    if (contains(blocked, s)) continue;
    // BFS back to s over allowed vertices.
    std::vector<Vertex> parent(n + 1, 0);
    std::deque<Vertex> queue{s};
    std::vector<bool> seen(n + 1, false);
    seen[s] = true;
    Vertex found = 0;
    while (!queue.empty() && !found) {
      Vertex v = queue.front();
      queue.pop_front();
      for (Vertex w : graph.outputs(v)) {
        if (w == s) {
          found = v;
          break;
        }
        if (!contains(blocked, w) && !seen[w]) {
          seen[w] = true;
          parent[w] = v;
          queue.push_back(w);
        }
      }
    }
    if (found) {
      std::vector<Vertex> cycle;
      for (Vertex v = found; v != s; v = parent[v]) cycle.push_back(v);
      cycle.push_back(s);
      std::reverse(cycle.begin(), cycle.end());
      if (best.empty() || cycle.size() < best.size()) best = cycle;
      if (best.size() == 1) return best;
    }
  }
  return best;
}

void enumerate_minimum(const DirectedGraph& graph, std::uint64_t chosen, int remaining,
                       std::set<std::uint64_t>& found) {
  auto cycle = shortest_cycle_avoiding(graph, chosen);
  if (cycle.empty()) {
    found.insert(chosen);
    return;
  }
  if (remaining == 0) return;
  for (Vertex v : cycle)
    enumerate_minimum(graph, chosen | (1ULL << (v - 1)), remaining - 1, found);
}

}  // namespace

std::vector<Vertex> boundary(const DirectedGraph& graph, std::span<const Vertex> w) {
  const int n = graph.vertex_count();
  return to_vertices(n, boundary_mask(graph, to_mask(n, w)));
}

bool is_dominant(const DirectedGraph& graph, std::span<const Vertex> u) {
  const int n = graph.vertex_count();
  const std::uint64_t full = n == 64 ? ~0ULL : (1ULL << n) - 1;
  return induced_subgraph_acyclic(graph, full & ~to_mask(n, u));
}

std::vector<Vertex> vertices_on_cycles(const DirectedGraph& graph) {
  // v lies on a cycle iff v is reachable from some successor of v.
  const int n = graph.vertex_count();
  std::vector<Vertex> result;
  for (Vertex v = 1; v <= n; ++v) {
    std::vector<bool> seen(n + 1, false);
    std::vector<Vertex> stack(graph.outputs(v).begin(), graph.outputs(v).end());
    bool on_cycle = false;
    while (!stack.empty() && !on_cycle) {
      Vertex w = stack.back();
      stack.pop_back();
      if (w == v) {
        on_cycle = true;
        break;
      }
      if (seen[w]) continue;
      seen[w] = true;
      for (Vertex x : graph.outputs(w)) stack.push_back(x);
    }
    if (on_cycle) result.push_back(v);
  }
  return result;
}

std::vector<std::vector<Vertex>> chain_of(const DirectedGraph& graph, std::span<const Vertex> u) {
  const int n = graph.vertex_count();
  const std::uint64_t full = n == 64 ? ~0ULL : (1ULL << n) - 1;
  std::uint64_t current = to_mask(n, u);
  std::vector<std::vector<Vertex>> chain{to_vertices(n, current)};
  while (current != full) {
    const std::uint64_t next = current | boundary_mask(graph, current);
    if (next == current)
      throw NotDominantError(
          fmt::format("chain stalls at {} of {} vertices", std::popcount(current), n));
    current = next;
    chain.push_back(to_vertices(n, current));
  }
  return chain;
}

std::vector<int> path_lengths(const DirectedGraph& graph, std::span<const Vertex> u,
                              Vertex from, Vertex to) {
  auto masks = all_path_length_masks(graph, u);
  auto it = masks.find({from, to});
  return it == masks.end() ? std::vector<int>{} : mask_to_lengths(it->second);
}

int recurrence_length(const DirectedGraph& graph, std::span<const Vertex> u) {
  int best = 0;
  for (const auto& [arc, mask] : all_path_length_masks(graph, u))
    best = std::max(best, 63 - std::countl_zero(mask));
  return best;
}

std::vector<std::pair<Vertex, Vertex>> reduced_graph(const DirectedGraph& graph,
                                                     std::span<const Vertex> u) {
  std::vector<std::pair<Vertex, Vertex>> arcs;
  for (const auto& [arc, mask] : all_path_length_masks(graph, u)) arcs.push_back(arc);
  std::sort(arcs.begin(), arcs.end());
  return arcs;
}

std::vector<std::vector<Vertex>> minimum_dominant_sets(const DirectedGraph& graph) {
  const int n = graph.vertex_count();
  if (n > kMaxEnumerationBits)
    throw SizeLimitError(fmt::format("exact search limited to {} vertices, got {}",
                                     kMaxEnumerationBits, n));
  if (shortest_cycle_avoiding(graph, 0).empty()) return {{}};
  for (int k = 1; k <= n; ++k) {
    std::set<std::uint64_t> found;
    enumerate_minimum(graph, 0, k, found);
    if (found.empty()) continue;
    std::vector<std::vector<Vertex>> result;
    for (std::uint64_t mask : found)
      if (std::popcount(mask) == k) result.push_back(to_vertices(n, mask));
    if (!result.empty()) {
      std::sort(result.begin(), result.end());
      return result;
    }
  }
  return {};  // unreachable: non-empty input sets force a cycle
}

DominanceReport analyze_dominance(const DirectedGraph& graph, std::span<const Vertex> u) {
  DominanceReport report;
  report.dominant_set.assign(u.begin(), u.end());
  std::sort(report.dominant_set.begin(), report.dominant_set.end());
  report.chain = chain_of(graph, u);
  report.depth = static_cast<int>(report.chain.size()) - 1;
  for (const auto& [arc, mask] : all_path_length_masks(graph, u)) {
    report.reduced_arcs.push_back(arc);
    report.path_lengths[arc] = mask_to_lengths(mask);
    report.recurrence_length =
        std::max(report.recurrence_length, 63 - std::countl_zero(mask));
  }
  std::sort(report.reduced_arcs.begin(), report.reduced_arcs.end());
  return report;
}

namespace {

std::string join(std::span<const int> vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ' ';
    out += fmt::format("{}", vs[i]);
  }
  return out;
}

}  // namespace

std::string report_to_text(const DominanceReport& report) {
  std::string out = fmt::format("dominant set: {}\n", join(report.dominant_set));
  for (std::size_t i = 0; i < report.chain.size(); ++i)
    out += fmt::format("chain level {}: {}\n", i, join(report.chain[i]));
  out += fmt::format("depth: {}\n", report.depth);
  out += fmt::format("recurrence length: {}\n", report.recurrence_length);
  for (const auto& [arc, lengths] : report.path_lengths)
    out += fmt::format("reduced arc {} -> {}: lengths {}\n", arc.first, arc.second,
                       join(lengths));
  return out;
}

std::string report_to_csv(const DominanceReport& report) {
  std::string out;
  for (std::size_t i = 0; i < report.chain.size(); ++i)
    out += fmt::format("chain,{},{}\n", i, join(report.chain[i]));
  for (const auto& [arc, lengths] : report.path_lengths)
    out += fmt::format("arc,{},{},{}\n", arc.first, arc.second, join(lengths));
  return out;
}

}  // namespace dominet
