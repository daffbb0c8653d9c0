#include "dominet/landscape.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include <fmt/format.h>

namespace dominet {

TransitionDiagram transition_diagram(std::uint64_t size,
                                     const std::function<std::uint32_t(std::uint32_t)>& next) {
  if (size > (1ULL << kMaxEnumerationBits))
    throw SizeLimitError(fmt::format("state space of {} states exceeds 2^{}", size,
                                     kMaxEnumerationBits));
  TransitionDiagram diagram;
  diagram.size = static_cast<std::uint32_t>(size);
  diagram.successor.resize(diagram.size);
  for (std::uint32_t s = 0; s < diagram.size; ++s) {
    const std::uint32_t t = next(s);
    if (t >= diagram.size)
      throw std::invalid_argument(fmt::format("successor {} of state {} out of range", t, s));
    diagram.successor[s] = t;
  }
  return diagram;
}

TransitionDiagram transition_diagram(const BooleanNetwork& net) {
  const int n = net.vertex_count();
  if (n > kMaxEnumerationBits)
    throw SizeLimitError(
        fmt::format("network with {} vertices exceeds the 2^{} enumeration limit", n,
                    kMaxEnumerationBits));
  return transition_diagram(1ULL << n, [&](std::uint32_t s) {
    return static_cast<std::uint32_t>(step(net, Configuration(s, n)).bits());
  });
}

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;

  explicit UnionFind(std::uint32_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void merge(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

}  // namespace

LandscapeReport analyze(const TransitionDiagram& diagram) {
  const std::uint32_t n = diagram.size;
  const auto& succ = diagram.successor;

  // Cycle states: peel states with no remaining predecessor; whatever
  // survives lies on a cycle.
  std::vector<std::uint32_t> indeg(n, 0);
  for (std::uint32_t s = 0; s < n; ++s) ++indeg[succ[s]];
  std::vector<std::uint32_t> stack;
  for (std::uint32_t s = 0; s < n; ++s)
    if (indeg[s] == 0) stack.push_back(s);
  std::vector<bool> on_cycle(n, true);
  while (!stack.empty()) {
    const std::uint32_t s = stack.back();
    stack.pop_back();
    on_cycle[s] = false;
    if (--indeg[succ[s]] == 0) stack.push_back(succ[s]);
  }

  // Components by union-find over (state, successor) pairs; ids assigned
  // by the smallest state in each component.
  UnionFind uf(n);
  for (std::uint32_t s = 0; s < n; ++s) uf.merge(s, succ[s]);
  std::vector<std::int32_t> component_of(n, -1);
  std::int32_t num_components = 0;
  std::vector<std::int32_t> id_of_root(n, -1);
  for (std::uint32_t s = 0; s < n; ++s) {
    const std::uint32_t root = uf.find(s);
    if (id_of_root[root] < 0) id_of_root[root] = num_components++;
    component_of[s] = id_of_root[root];
  }

  // Transients: reverse breadth-first layering from the cycles.
  std::vector<std::uint32_t> pred_offset(n + 1, 0);
  for (std::uint32_t s = 0; s < n; ++s) ++pred_offset[succ[s] + 1];
  for (std::uint32_t s = 0; s < n; ++s) pred_offset[s + 1] += pred_offset[s];
  std::vector<std::uint32_t> pred(n);
  {
    std::vector<std::uint32_t> cursor(pred_offset.begin(), pred_offset.end() - 1);
    for (std::uint32_t s = 0; s < n; ++s) pred[cursor[succ[s]]++] = s;
  }
  std::vector<std::uint32_t> transient_of(n, 0);
  std::vector<std::uint32_t> queue;
  queue.reserve(n);
  for (std::uint32_t s = 0; s < n; ++s)
    if (on_cycle[s]) queue.push_back(s);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t s = queue[head];
    for (std::uint32_t k = pred_offset[s]; k < pred_offset[s + 1]; ++k) {
      const std::uint32_t p = pred[k];
      if (on_cycle[p]) continue;
      transient_of[p] = transient_of[s] + 1;
      queue.push_back(p);
    }
  }

  LandscapeReport report;
  report.size = n;
  report.component_of = std::move(component_of);
  report.transient_of = std::move(transient_of);
  report.basins.resize(num_components);
  for (std::int32_t c = 0; c < num_components; ++c) report.basins[c].component = c;
  std::vector<std::uint32_t> min_cycle_state(num_components, n);
  for (std::uint32_t s = 0; s < n; ++s) {
    BasinRecord& basin = report.basins[report.component_of[s]];
    ++basin.basin_size;
    basin.transient_sum += report.transient_of[s];
    basin.max_transient = std::max(basin.max_transient, report.transient_of[s]);
    if (on_cycle[s]) {
      ++basin.period;
      min_cycle_state[basin.component] = std::min(min_cycle_state[basin.component], s);
    }
  }
  for (std::int32_t c = 0; c < num_components; ++c) {
    BasinRecord& basin = report.basins[c];
    basin.cycle_states.reserve(basin.period);
    std::uint32_t s = min_cycle_state[c];
    do {
      basin.cycle_states.push_back(s);
      s = succ[s];
    } while (s != min_cycle_state[c]);
  }
  return report;
}

namespace {

double pow2(int exponent) { return std::ldexp(1.0, exponent); }

}  // namespace

BoundsReport check_bounds(const LandscapeReport& net_report, const LandscapeReport& induced_report,
                          std::span<const std::uint32_t> h_image, int num_vertices,
                          int num_dominant, int depth, int ell) {
  if (net_report.size != (1ULL << num_vertices))
    throw MismatchedSystemsError(fmt::format("network report covers {} states, expected 2^{}",
                                             net_report.size, num_vertices));
  if (induced_report.size != (1ULL << (static_cast<std::uint64_t>(num_dominant) * ell)))
    throw MismatchedSystemsError(
        fmt::format("induced report covers {} states, expected 2^({}x{})", induced_report.size,
                    num_dominant, ell));
  if (h_image.size() != net_report.size)
    throw MismatchedSystemsError("h image does not cover the network state space");
  for (std::uint32_t y : h_image)
    if (y >= induced_report.size)
      throw MismatchedSystemsError("h image leaves the induced state space");

  const std::size_t num_basins = net_report.basins.size();
  std::vector<std::int32_t> paired(num_basins, -1);
  for (std::uint32_t s = 0; s < net_report.size; ++s) {
    const std::int32_t c = net_report.component_of[s];
    const std::int32_t g = induced_report.component_of[h_image[s]];
    if (paired[c] < 0)
      paired[c] = g;
    else if (paired[c] != g)
      throw MismatchedSystemsError(
          fmt::format("states of component {} map into different induced components", c));
  }

  BoundsReport report;
  auto add = [&](std::string clause, double observed, double bound, bool satisfied) {
    report.rows.push_back({std::move(clause), observed, bound, satisfied});
    report.all_satisfied = report.all_satisfied && satisfied;
  };

  // a) per-period counts |Per_P| <= 2^(P |U|), with Per_P the states whose
  // minimal period divides P.
  std::map<int, std::uint64_t> cycle_states_of_period;
  for (const auto& basin : net_report.basins)
    cycle_states_of_period[basin.period] += basin.period;
  int p_max = 0;
  for (const auto& [period, count] : cycle_states_of_period) p_max = std::max(p_max, period);
  for (const auto& [period, unused] : cycle_states_of_period) {
    std::uint64_t observed = 0;
    for (const auto& [q, count] : cycle_states_of_period)
      if (period % q == 0) observed += count;
    const double bound = pow2(period * num_dominant);
    add(fmt::format("a[P={}]", period), static_cast<double>(observed), bound,
        static_cast<double>(observed) <= bound);
  }

  // b) maximal prime period <= 2^(ell |U|).
  {
    const double bound = pow2(ell * num_dominant);
    add("b", p_max, bound, p_max <= bound);
  }

  // c) attractor count <= sum over P of 2^(P |U|) / P.
  {
    double bound = 0;
    for (int period = 1; period <= p_max; ++period) {
      bound += pow2(period * num_dominant) / period;
      if (bound > 1e300) {
        bound = std::numeric_limits<double>::infinity();
        break;
      }
    }
    add("c", static_cast<double>(num_basins), bound,
        static_cast<double>(num_basins) <= bound);
  }

  // d) per-state transient sandwich: tau_ind(h(x)) <= tau_net(x) <= tau_ind(h(x)) + d.
  {
    std::int64_t min_margin = std::numeric_limits<std::int64_t>::max();
    std::int64_t max_margin = std::numeric_limits<std::int64_t>::min();
    for (std::uint32_t s = 0; s < net_report.size; ++s) {
      const std::int64_t margin = static_cast<std::int64_t>(net_report.transient_of[s]) -
                                  static_cast<std::int64_t>(induced_report.transient_of[h_image[s]]);
      min_margin = std::min(min_margin, margin);
      max_margin = std::max(max_margin, margin);
    }
    add("d.lower", static_cast<double>(min_margin), 0, min_margin >= 0);
    add("d.upper", static_cast<double>(max_margin), depth, max_margin <= depth);
  }

  // e) per-basin size sandwich: |C_ind| <= |C_net| <= |C_ind| 2^(|V|-|U|).
  // The lower inequality can fail legitimately: histories with no h-preimage
  // pad induced components. e.image checks the repaired statement instead:
  // the h-image of a basin is exactly the h-reachable part of its partner.
  {
    double min_ratio = std::numeric_limits<double>::infinity();
    double max_ratio = 0;
    for (std::size_t c = 0; c < num_basins; ++c) {
      const double ratio = static_cast<double>(net_report.basins[c].basin_size) /
                           static_cast<double>(induced_report.basins[paired[c]].basin_size);
      min_ratio = std::min(min_ratio, ratio);
      max_ratio = std::max(max_ratio, ratio);
    }
    const double bound = pow2(num_vertices - num_dominant);
    add("e.lower", min_ratio, 1, min_ratio >= 1);
    add("e.upper", max_ratio, bound, max_ratio <= bound);

    std::vector<std::pair<std::int32_t, std::uint32_t>> pairs;
    pairs.reserve(net_report.size);
    for (std::uint32_t s = 0; s < net_report.size; ++s)
      pairs.emplace_back(net_report.component_of[s], h_image[s]);
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    std::vector<std::uint64_t> image_size_of_basin(num_basins, 0);
    for (const auto& [c, y] : pairs) ++image_size_of_basin[c];
    std::vector<std::uint32_t> reachable(h_image.begin(), h_image.end());
    std::sort(reachable.begin(), reachable.end());
    reachable.erase(std::unique(reachable.begin(), reachable.end()), reachable.end());
    std::vector<std::uint64_t> reachable_in_induced(induced_report.basins.size(), 0);
    for (std::uint32_t y : reachable) ++reachable_in_induced[induced_report.component_of[y]];
    int image_mismatches = 0;
    for (std::size_t c = 0; c < num_basins; ++c)
      if (image_size_of_basin[c] != reachable_in_induced[paired[c]]) ++image_mismatches;
    add("e.image", image_mismatches, 0, image_mismatches == 0);
  }

  // Eventual-conjugacy consequences: equal component counts, bijective
  // pairing, equal periods along the pairing.
  {
    add("components", static_cast<double>(num_basins),
        static_cast<double>(induced_report.basins.size()),
        num_basins == induced_report.basins.size());
    std::vector<bool> hit(induced_report.basins.size(), false);
    int distinct = 0;
    int period_mismatches = 0;
    for (std::size_t c = 0; c < num_basins; ++c) {
      if (!hit[paired[c]]) {
        hit[paired[c]] = true;
        ++distinct;
      }
      if (net_report.basins[c].period != induced_report.basins[paired[c]].period)
        ++period_mismatches;
    }
    add("pairing", distinct, static_cast<double>(num_basins),
        distinct == static_cast<int>(num_basins));
    add("periods", period_mismatches, 0, period_mismatches == 0);
  }
  return report;
}

BooleanNetwork extremal_cycle_network(int period) {
  if (period < 1) throw std::invalid_argument("period must be positive");
  std::vector<LocalRule> rules(period);
  for (Vertex v = 1; v <= period; ++v) {
    const Vertex prev = v == 1 ? period : v - 1;
    rules[v - 1] = LocalRule{{prev}, identity_table()};
  }
  return BooleanNetwork(std::move(rules));
}

BooleanNetwork extremal_chain_network(int n) {
  if (n < 1) throw std::invalid_argument("vertex count must be positive");
  std::vector<LocalRule> rules(n);
  rules[0] = LocalRule{{1}, identity_table()};
  for (Vertex v = 2; v <= n; ++v) rules[v - 1] = LocalRule{{v - 1}, identity_table()};
  return BooleanNetwork(std::move(rules));
}

namespace {

std::uint32_t reverse_bits(std::uint32_t value, int width) {
  std::uint32_t out = 0;
  for (int i = 0; i < width; ++i)
    if (value >> i & 1) out |= 1u << (width - 1 - i);
  return out;
}

// Eulerian circuit of the binary de Bruijn graph on 2^(ell-1) nodes,
// Hierholzer from the all-zeros node taking the smallest unused edge
// first. Returns the 2^ell edge values in circuit order.
std::vector<std::uint32_t> debruijn_circuit(int ell) {
  const std::uint32_t num_nodes = 1u << (ell - 1);
  const std::uint32_t node_mask = num_nodes - 1;
  std::vector<std::array<bool, 2>> used(num_nodes, {false, false});
  std::vector<std::pair<std::uint32_t, std::int64_t>> stack{{0u, -1}};
  std::vector<std::uint32_t> circuit;
  circuit.reserve(2u << (ell - 1));
  while (!stack.empty()) {
    auto& [node, incoming] = stack.back();
    int next_bit = -1;
    if (!used[node][0])
      next_bit = 0;
    else if (!used[node][1])
      next_bit = 1;
    if (next_bit >= 0) {
      used[node][next_bit] = true;
      const std::uint32_t edge = (node << 1) | next_bit;
      stack.push_back({edge & node_mask, edge});
    } else {
      if (incoming >= 0) circuit.push_back(static_cast<std::uint32_t>(incoming));
      stack.pop_back();
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  return circuit;
}

}  // namespace

BooleanNetwork extremal_debruijn_network(int ell) {
  if (ell < 1) throw std::invalid_argument("recurrence length must be positive");
  if (ell > kMaxEnumerationBits)
    throw SizeLimitError(fmt::format("feedback table with 2^{} entries refused", ell));
  const auto circuit = debruijn_circuit(ell);
  // Edge values carry the newest bit in the least significant position, so
  // the feedback table index (newest slice most significant) is the
  // bit-reversed edge value.
  std::vector<std::uint8_t> feedback(1u << ell, 0);
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const std::uint32_t next_edge = circuit[(i + 1) % circuit.size()];
    feedback[reverse_bits(circuit[i], ell)] = next_edge & 1;
  }
  std::vector<LocalRule> rules(ell);
  std::vector<Vertex> all(ell);
  std::iota(all.begin(), all.end(), 1);
  rules[0] = LocalRule{std::move(all), std::move(feedback)};
  for (Vertex v = 2; v <= ell; ++v) rules[v - 1] = LocalRule{{v - 1}, identity_table()};
  return BooleanNetwork(std::move(rules));
}

std::string landscape_to_csv(const LandscapeReport& report) {
  std::string out = "component,period,basin_size,mean_transient,max_transient\n";
  for (const auto& basin : report.basins)
    out += fmt::format("{},{},{},{},{}\n", basin.component, basin.period, basin.basin_size,
                       basin.mean_transient(), basin.max_transient);
  return out;
}

std::string bounds_to_csv(const BoundsReport& report) {
  std::string out = "clause,observed,bound,satisfied\n";
  for (const auto& row : report.rows)
    out += fmt::format("{},{},{},{}\n", row.clause, row.observed, row.bound,
                       row.satisfied ? "yes" : "no");
  return out;
}

}  // namespace dominet
