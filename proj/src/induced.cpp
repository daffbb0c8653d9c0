#include "dominet/induced.hpp"

#include <algorithm>
#include <unordered_map>

#include <fmt/format.h>

namespace dominet {

namespace {

int index_in(std::span<const Vertex> u_set, Vertex v) {
  const auto it = std::lower_bound(u_set.begin(), u_set.end(), v);
  return it != u_set.end() && *it == v ? static_cast<int>(it - u_set.begin()) : -1;
}

int reconstruct_impl(const BooleanNetwork& net, std::span<const Vertex> u_set, int ell,
                     const HistoryState& y, Vertex v, int t, std::vector<std::int8_t>& memo) {
  if (t >= ell)
    throw DepthExceededError(
        fmt::format("reconstruction of vertex {} needs slice {} of {}", v, t, ell));
  const int u_index = index_in(u_set, v);
  if (u_index >= 0) return y.value(u_index, t);
  std::int8_t& cell = memo[(v - 1) * ell + t];
  if (cell != 0) return cell;
  const LocalRule& rule = net.rule(v);
  std::size_t index = 0;
  for (Vertex w : rule.inputs)
    index = (index << 1) | (reconstruct_impl(net, u_set, ell, y, w, t + 1, memo) > 0 ? 1u : 0u);
  cell = rule.table[index] ? +1 : -1;
  return cell;
}

}  // namespace

int reconstruct_value(const BooleanNetwork& net, std::span<const Vertex> u_set, int ell,
                      const HistoryState& y, Vertex v, int t) {
  std::vector<std::int8_t> memo(static_cast<std::size_t>(net.vertex_count()) * ell, 0);
  return reconstruct_impl(net, u_set, ell, y, v, t, memo);
}

InducedAutomata::InducedAutomata(BooleanNetwork source, std::vector<Vertex> u_set, int ell,
                                 std::vector<std::vector<Vertex>> rule_inputs,
                                 std::vector<std::vector<std::uint8_t>> tables)
    : source_(std::move(source)),
      u_(std::move(u_set)),
      ell_(ell),
      inputs_(std::move(rule_inputs)),
      tables_(std::move(tables)) {
  if (ell_ < 1) throw std::invalid_argument("recurrence length must be positive");
  if (!std::is_sorted(u_.begin(), u_.end()))
    throw std::invalid_argument("dominant set must be ascending");
  if (inputs_.size() != u_.size())
    throw std::invalid_argument("one reduced input list per dominant vertex required");
  if (!tables_.empty() && tables_.size() != u_.size())
    throw std::invalid_argument("one table per dominant vertex required when materialized");
  input_positions_.resize(inputs_.size());
  for (std::size_t i = 0; i < inputs_.size(); ++i) {
    for (Vertex w : inputs_[i]) {
      const int pos = index_in(u_, w);
      if (pos < 0)
        throw std::invalid_argument(fmt::format("reduced input {} is not a dominant vertex", w));
      input_positions_[i].push_back(pos);
    }
    if (!tables_.empty()) {
      const std::size_t expected = 1ULL << (inputs_[i].size() * ell_);
      if (tables_[i].size() != expected)
        throw std::invalid_argument(fmt::format("table {} has {} entries, expected {}", i,
                                                tables_[i].size(), expected));
    }
  }
}

std::size_t InducedAutomata::table_index(int u_index, const HistoryState& y) const {
  std::size_t index = 0;
  for (int pos : input_positions_[u_index])
    for (int t = 0; t < ell_; ++t) index = (index << 1) | (y.value(pos, t) > 0 ? 1u : 0u);
  return index;
}

int InducedAutomata::phi(int u_index, const HistoryState& y) const {
  if (materialized()) return tables_[u_index][table_index(u_index, y)] ? +1 : -1;
  const Vertex u = u_[u_index];
  const LocalRule& rule = source_.rule(u);
  std::vector<std::int8_t> memo(static_cast<std::size_t>(source_.vertex_count()) * ell_, 0);
  std::size_t index = 0;
  for (Vertex w : rule.inputs)
    index = (index << 1) | (reconstruct_impl(source_, u_, ell_, y, w, 0, memo) > 0 ? 1u : 0u);
  return rule.table[index] ? +1 : -1;
}

HistoryState InducedAutomata::phi_slice_applied(const HistoryState& y) const {
  HistoryState next(0, num_vertices(), ell_);
  for (int i = 0; i < num_vertices(); ++i) {
    next = next.with_value(i, 0, phi(i, y));
    for (int t = 1; t < ell_; ++t) next = next.with_value(i, t, y.value(i, t - 1));
  }
  return next;
}

InducedAutomata build_induced(const BooleanNetwork& net, std::span<const Vertex> u_set) {
  std::vector<Vertex> u(u_set.begin(), u_set.end());
  std::sort(u.begin(), u.end());
  DominanceReport report = analyze_dominance(net.graph(), u);
  const int ell = report.recurrence_length;
  const int num_u = static_cast<int>(u.size());

  std::vector<std::vector<Vertex>> inputs(num_u);
  for (const auto& [arc, lengths] : report.path_lengths)
    inputs[index_in(u, arc.second)].push_back(arc.first);
  for (auto& list : inputs) std::sort(list.begin(), list.end());

  std::vector<std::vector<std::uint8_t>> tables;
  if (num_u * ell <= InducedAutomata::kMaterializeBits) {
    tables.resize(num_u);
    for (int i = 0; i < num_u; ++i) {
      const int bits = static_cast<int>(inputs[i].size()) * ell;
      tables[i].resize(1ULL << bits);
      std::vector<int> positions;
      for (Vertex w : inputs[i]) positions.push_back(index_in(u, w));
      const LocalRule& rule = net.rule(u[i]);
      for (std::uint64_t combo = 0; combo < tables[i].size(); ++combo) {
        // Expand the table index into a full history; slices of dominant
        // vertices outside the reduced inputs are never read.
        HistoryState y(0, num_u, ell);
        int bit = bits;
        for (int pos : positions)
          for (int t = 0; t < ell; ++t)
            y = y.with_value(pos, t, (combo >> --bit & 1) ? +1 : -1);
        std::vector<std::int8_t> memo(static_cast<std::size_t>(net.vertex_count()) * ell, 0);
        std::size_t index = 0;
        for (Vertex w : rule.inputs)
          index = (index << 1) | (reconstruct_impl(net, u, ell, y, w, 0, memo) > 0 ? 1u : 0u);
        tables[i][combo] = rule.table[index];
      }
    }
  }
  return InducedAutomata(net, std::move(u), ell, std::move(inputs), std::move(tables));
}

HistoryState induced_step(const InducedAutomata& automata, const HistoryState& y) {
  if (y.num_vertices() != automata.num_vertices() || y.ell() != automata.ell())
    throw std::invalid_argument("history state does not match the automata network");
  return automata.phi_slice_applied(y);
}

HistoryState h_map(const BooleanNetwork& net, std::span<const Vertex> u_set, int ell,
                   const Configuration& x) {
  HistoryState y(0, static_cast<int>(u_set.size()), ell);
  Configuration current = x;
  for (int s = 0; s < ell; ++s) {
    const int t = ell - 1 - s;
    for (std::size_t i = 0; i < u_set.size(); ++i)
      y = y.with_value(static_cast<int>(i), t, current.state(u_set[i]));
    if (s + 1 < ell) current = step(net, current);
  }
  return y;
}

TransitionDiagram transition_diagram(const InducedAutomata& automata) {
  const int bits = automata.state_bits();
  if (bits > kMaxEnumerationBits)
    throw SizeLimitError(fmt::format("induced state space of 2^{} states exceeds 2^{}", bits,
                                     kMaxEnumerationBits));
  const int num_u = automata.num_vertices();
  const int ell = automata.ell();
  return transition_diagram(1ULL << bits, [&](std::uint32_t s) {
    return static_cast<std::uint32_t>(
        automata.phi_slice_applied(HistoryState(s, num_u, ell)).bits());
  });
}

bool verify_semiconjugacy(const BooleanNetwork& net, const InducedAutomata& automata) {
  const int n = net.vertex_count();
  if (n > kMaxEnumerationBits)
    throw SizeLimitError(fmt::format("verification over 2^{} states refused", n));
  const auto& u = automata.dominant_set();
  const int ell = automata.ell();
  for (std::uint64_t s = 0; s < (1ULL << n); ++s) {
    const Configuration x(s, n);
    const HistoryState lhs = automata.phi_slice_applied(h_map(net, u, ell, x));
    const HistoryState rhs = h_map(net, u, ell, step(net, x));
    if (lhs != rhs) return false;
  }
  return true;
}

bool verify_semiconjugacy(const BooleanNetwork& net, std::span<const Vertex> u_set) {
  return verify_semiconjugacy(net, build_induced(net, u_set));
}

bool verify_injective_on_periodics(const BooleanNetwork& net, std::span<const Vertex> u_set) {
  const int n = net.vertex_count();
  if (n > kMaxEnumerationBits)
    throw SizeLimitError(fmt::format("verification over 2^{} states refused", n));
  std::vector<Vertex> u(u_set.begin(), u_set.end());
  std::sort(u.begin(), u.end());
  const int ell = recurrence_length(net.graph(), u);
  const LandscapeReport report = analyze(transition_diagram(net));
  std::unordered_map<std::uint64_t, std::uint64_t> image;
  for (const auto& basin : report.basins) {
    for (std::uint32_t s : basin.cycle_states) {
      const HistoryState y = h_map(net, u, ell, Configuration(s, n));
      auto [it, inserted] = image.try_emplace(y.bits(), s);
      if (!inserted && it->second != s) return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> build_reverse_conjugacy(const BooleanNetwork& net,
                                                   std::span<const Vertex> u_set) {
  const int n = net.vertex_count();
  const InducedAutomata automata = build_induced(net, u_set);
  const auto& u = automata.dominant_set();
  const int ell = automata.ell();

  const TransitionDiagram net_diagram = transition_diagram(net);
  const LandscapeReport net_report = analyze(net_diagram);
  const TransitionDiagram ind_diagram = transition_diagram(automata);
  const LandscapeReport ind_report = analyze(ind_diagram);
  const std::uint64_t ind_size = ind_diagram.size;

  std::vector<std::uint32_t> h_image(net_diagram.size);
  for (std::uint32_t s = 0; s < net_diagram.size; ++s)
    h_image[s] = static_cast<std::uint32_t>(h_map(net, u, ell, Configuration(s, n)).bits());

  constexpr std::uint64_t kUnassigned = ~0ULL;
  std::vector<std::uint64_t> reverse(ind_size, kUnassigned);

  // Cycle states invert h exactly: each induced cycle state has a unique
  // periodic preimage.
  for (const auto& basin : net_report.basins)
    for (std::uint32_t s : basin.cycle_states) reverse[h_image[s]] = s;

  // Preimage buckets for leaf anchoring, smallest configuration first.
  std::vector<std::vector<std::uint32_t>> preimages(ind_size);
  for (std::uint32_t s = 0; s < net_diagram.size; ++s) preimages[h_image[s]].push_back(s);

  std::vector<bool> is_leaf(ind_size, true);
  for (std::uint32_t y = 0; y < ind_size; ++y) is_leaf[ind_diagram.successor[y]] = false;

  for (const auto& basin : ind_report.basins) {
    std::vector<std::uint32_t> leaves;
    for (std::uint32_t y = 0; y < ind_size; ++y)
      if (is_leaf[y] && ind_report.component_of[y] == basin.component) leaves.push_back(y);
    if (leaves.empty()) continue;  // pure cycle, already inverted

    // Smallest common shift t0 with a preimage ahead of every leaf.
    const std::uint32_t horizon = basin.max_transient + basin.period;
    std::uint32_t t0 = 0;
    for (; t0 <= horizon; ++t0) {
      bool all = true;
      for (std::uint32_t leaf : leaves) {
        std::uint32_t y = leaf;
        for (std::uint32_t i = 0; i < t0; ++i) y = ind_diagram.successor[y];
        if (preimages[y].empty()) {
          all = false;
          break;
        }
      }
      if (all) break;
    }

    for (std::uint32_t leaf : leaves) {
      std::uint32_t anchor_state = leaf;
      for (std::uint32_t i = 0; i < t0; ++i) anchor_state = ind_diagram.successor[anchor_state];
      const std::uint32_t anchor = *std::min_element(preimages[anchor_state].begin(),
                                                     preimages[anchor_state].end());
      std::uint32_t y = leaf;
      std::uint32_t x = anchor;
      for (std::uint32_t t = 0; t <= horizon; ++t) {
        if (reverse[y] == kUnassigned) reverse[y] = x;
        y = ind_diagram.successor[y];
        x = net_diagram.successor[x];
      }
    }
  }
  return reverse;
}

std::string serialize_induced(const InducedAutomata& automata) {
  if (!automata.materialized())
    throw SizeLimitError("induced rules too large to materialize for serialization");
  std::string out = fmt::format("inducednet 1\nell {}\nnodes {}\n", automata.ell(),
                                automata.num_vertices());
  for (int i = 0; i < automata.num_vertices(); ++i) {
    out += fmt::format("node {} in", automata.dominant_set()[i]);
    for (Vertex w : automata.rule_inputs(i)) out += fmt::format(" {}", w);
    out += " table ";
    for (auto e : automata.rule_table(i)) out += e ? '1' : '0';
    out += '\n';
  }
  return out;
}

}  // namespace dominet
