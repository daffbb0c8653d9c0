#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dominet/errors.hpp"

namespace dominet {

// Vertices are 1-based ids, 1..n.
using Vertex = int;

// Bit-packed states support stepping up to 64 vertices; exhaustive
// state-space operations refuse anything above 2^24 states.
inline constexpr int kMaxVertices = 64;
inline constexpr int kMaxEnumerationBits = 24;

// Directed graph where every vertex has a non-empty input set (required
// for well-defined dynamics). Self-loops are legal, duplicate arcs are not.
class DirectedGraph {
public:
  DirectedGraph(int n, std::vector<std::pair<Vertex, Vertex>> arcs);

  int vertex_count() const { return n_; }
  const std::vector<Vertex>& inputs(Vertex v) const { return in_[v - 1]; }
  const std::vector<Vertex>& outputs(Vertex v) const { return out_[v - 1]; }
  bool has_arc(Vertex from, Vertex to) const;
  std::vector<std::pair<Vertex, Vertex>> arcs() const;  // sorted
  int arc_count() const { return arc_count_; }

private:
  int n_ = 0;
  int arc_count_ = 0;
  std::vector<std::vector<Vertex>> in_;
  std::vector<std::vector<Vertex>> out_;
};

// Truth-table local rule. For input states (s_1..s_k) taken in declared
// order, the table entry used has index sum(b_i * 2^(k-i)) with b_i = 1
// iff s_i = +1; entry value 1 encodes output +1.
struct LocalRule {
  std::vector<Vertex> inputs;       // = I(v) of the owning vertex, ascending
  std::vector<std::uint8_t> table;  // 2^k entries of 0/1
};

std::vector<std::uint8_t> identity_table();
std::vector<std::uint8_t> negation_table();
std::vector<std::uint8_t> constant_table(int state);

// Configuration over {-1,+1}^n packed into a word: bit (n-v) holds vertex
// v, bit value 1 encodes +1. The packed word doubles as the state index,
// so vertex 1 is the most significant bit.
class Configuration {
public:
  Configuration(std::uint64_t bits, int n) : bits_(bits), n_(n) {}
  static Configuration from_states(std::span<const int> states);
  static Configuration all_plus(int n) { return Configuration((n == 64 ? ~0ULL : (1ULL << n) - 1), n); }
  static Configuration all_minus(int n) { return Configuration(0, n); }

  int size() const { return n_; }
  std::uint64_t bits() const { return bits_; }
  int state(Vertex v) const { return ((bits_ >> (n_ - v)) & 1) ? +1 : -1; }
  Configuration with_state(Vertex v, int state) const;
  std::vector<int> states() const;
  Configuration negated() const;

  bool operator==(const Configuration&) const = default;

private:
  std::uint64_t bits_;
  int n_;
};

// Synchronous Boolean network: one truth-table rule per vertex. The graph
// is derived from the rule input lists, so rules[v].inputs == I(v) holds
// by construction. Immutable after construction and safe to share.
class BooleanNetwork {
public:
  explicit BooleanNetwork(std::vector<LocalRule> rules);

  int vertex_count() const { return graph_.vertex_count(); }
  const DirectedGraph& graph() const { return graph_; }
  const LocalRule& rule(Vertex v) const { return rules_[v - 1]; }

private:
  DirectedGraph graph_;
  std::vector<LocalRule> rules_;
};

int evaluate_rule(const LocalRule& rule, const Configuration& x);
Configuration step(const BooleanNetwork& net, const Configuration& x);
Configuration iterate(const BooleanNetwork& net, Configuration x, long steps);

// Sidecar sign annotation carried by the network file format.
struct SignEntry {
  Vertex from = 0;
  Vertex to = 0;
  int sign = 0;  // +1 or -1
};

struct NetworkDocument {
  BooleanNetwork net;
  std::vector<SignEntry> signs;  // empty unless the file carries sign lines
};

NetworkDocument parse_document(std::string_view text);
BooleanNetwork parse_network(std::string_view text);
std::string serialize_network(const BooleanNetwork& net);

}  // namespace dominet
