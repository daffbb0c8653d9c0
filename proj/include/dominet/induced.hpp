#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dominet/dominance.hpp"
#include "dominet/landscape.hpp"
#include "dominet/netcore.hpp"

namespace dominet {

// Packed dominant-history state: values y^t_u for u in the dominant set
// (ascending) and time slices 0 <= t < ell, slice 0 most recent. Bit
// layout is (u major, t minor) with the first pair most significant and
// bit 1 encoding +1, so the packed word doubles as the induced state
// index.
class HistoryState {
public:
  HistoryState(std::uint64_t bits, int num_vertices, int ell)
      : bits_(bits), num_vertices_(num_vertices), ell_(ell) {}

  std::uint64_t bits() const { return bits_; }
  int num_vertices() const { return num_vertices_; }
  int ell() const { return ell_; }
  int total_bits() const { return num_vertices_ * ell_; }

  int value(int u_index, int t) const {
    return (bits_ >> bit_position(u_index, t) & 1) ? +1 : -1;
  }
  HistoryState with_value(int u_index, int t, int state) const {
    const std::uint64_t mask = 1ULL << bit_position(u_index, t);
    return HistoryState(state > 0 ? (bits_ | mask) : (bits_ & ~mask), num_vertices_, ell_);
  }
  HistoryState negated() const {
    const int total = total_bits();
    const std::uint64_t mask = total == 64 ? ~0ULL : (1ULL << total) - 1;
    return HistoryState(~bits_ & mask, num_vertices_, ell_);
  }

  bool operator==(const HistoryState&) const = default;

private:
  int bit_position(int u_index, int t) const {
    return total_bits() - 1 - (u_index * ell_ + t);
  }

  std::uint64_t bits_;
  int num_vertices_;
  int ell_;
};

// Value of vertex v at relative time t, reconstructed from the dominant
// history y: the recorded slice when v is dominant, otherwise the local
// rule applied to the reconstruction one slice deeper. Throws
// DepthExceededError if the recursion would need a slice at or beyond
// ell (impossible for a dominant set).
int reconstruct_value(const BooleanNetwork& net, std::span<const Vertex> u_set, int ell,
                      const HistoryState& y, Vertex v, int t);

// Automata network on the reduced graph: states are dominant histories,
// the update prepends the reconstructed next slice and drops the oldest.
// Local rules are materialized as truth tables while |U| * ell stays at or
// below kMaterializeBits, and evaluated on demand otherwise.
class InducedAutomata {
public:
  static constexpr int kMaterializeBits = 20;

  InducedAutomata(BooleanNetwork source, std::vector<Vertex> u_set, int ell,
                  std::vector<std::vector<Vertex>> rule_inputs,
                  std::vector<std::vector<std::uint8_t>> tables);

  const BooleanNetwork& source() const { return source_; }
  const std::vector<Vertex>& dominant_set() const { return u_; }
  int ell() const { return ell_; }
  int num_vertices() const { return static_cast<int>(u_.size()); }
  int state_bits() const { return num_vertices() * ell_; }
  bool materialized() const { return !tables_.empty(); }

  // Inputs of dominant vertex u_index in the reduced graph, ascending.
  const std::vector<Vertex>& rule_inputs(int u_index) const { return inputs_[u_index]; }
  const std::vector<std::uint8_t>& rule_table(int u_index) const { return tables_[u_index]; }

  int phi(int u_index, const HistoryState& y) const;
  HistoryState phi_slice_applied(const HistoryState& y) const;  // the update map

private:
  std::size_t table_index(int u_index, const HistoryState& y) const;

  BooleanNetwork source_;
  std::vector<Vertex> u_;
  int ell_;
  std::vector<std::vector<Vertex>> inputs_;
  std::vector<std::vector<int>> input_positions_;  // index into u_ per input
  std::vector<std::vector<std::uint8_t>> tables_;  // empty when lazy
};

InducedAutomata build_induced(const BooleanNetwork& net, std::span<const Vertex> u_set);

HistoryState induced_step(const InducedAutomata& automata, const HistoryState& y);

// h(x): slice t holds F^(ell-1-t)(x) restricted to the dominant set.
HistoryState h_map(const BooleanNetwork& net, std::span<const Vertex> u_set, int ell,
                   const Configuration& x);

TransitionDiagram transition_diagram(const InducedAutomata& automata);

// Exhaustive checks over the full configuration space (SizeLimitError
// above kMaxEnumerationBits vertices).
bool verify_semiconjugacy(const BooleanNetwork& net, std::span<const Vertex> u_set);
bool verify_semiconjugacy(const BooleanNetwork& net, const InducedAutomata& automata);
bool verify_injective_on_periodics(const BooleanNetwork& net, std::span<const Vertex> u_set);

// Reverse eventual equivalence h': induced state index -> configuration
// bits. On induced cycle states h' inverts h exactly; tree states extend
// forward from chosen leaf preimages.
std::vector<std::uint64_t> build_reverse_conjugacy(const BooleanNetwork& net,
                                                   std::span<const Vertex> u_set);

std::string serialize_induced(const InducedAutomata& automata);

}  // namespace dominet
