#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "dominet/netcore.hpp"
#include "dominet/rng.hpp"

namespace dominet {

// Digraph whose directed cycles all pass through vertex 1, every other
// vertex having in-degree one. Signs are empty until assigned.
struct CloverNetwork {
  int n = 0;
  std::vector<std::vector<Vertex>> cycles;            // each starts at vertex 1
  std::map<std::pair<Vertex, Vertex>, int> signs;     // arc -> +1 / -1

  std::vector<std::pair<Vertex, Vertex>> arcs() const;  // sorted
  int max_cycle_length() const;
};

// Ensemble generator: vertex 2 always opens the first petal; each vertex
// m in 3..n opens a new petal independently with probability p.
CloverNetwork generate_clover(int n, double p, SplitMix64& rng);

// Each arc negative independently with probability q.
CloverNetwork assign_signs(CloverNetwork clover, double q, SplitMix64& rng);

int cycle_sign(const CloverNetwork& clover, std::span<const Vertex> cycle);

// S_t = sum of signs of the length-t cycles, 1 <= t <= max cycle length.
struct SignSumVector {
  std::vector<int> sums;  // sums[t-1] = S_t
  int ell() const { return static_cast<int>(sums.size()); }
};

SignSumVector sign_sum_vector(const CloverNetwork& clover);

// Majority vote of the signed inputs, the vertex's own state breaking
// ties. Vertices with an even number of signed inputs gain their own
// state as an extra rule input to make the tie-break expressible as a
// truth table.
BooleanNetwork signed_majority_network(const CloverNetwork& clover);

// Sign(sum_t S_t y^(t-1) | y^0) as a truth table over 2^ell entries,
// index bits y^0..y^(ell-1) with y^0 most significant.
std::vector<std::uint8_t> clover_induced_rule(const SignSumVector& sums, int ell);

// Probability that a length-L cycle has positive sign.
double eta(int cycle_length, double q);

double expected_num_cycles(int n, double p);

// distribution[len] = P(first cycle has length len), len in 2..n.
std::vector<double> first_cycle_length_distribution(int n, double p);
double first_cycle_length_expectation(int n, double p);

struct MaxCycleLengthEstimate {
  double finite_sum = 0;
  double asymptotic = 0;
};
MaxCycleLengthEstimate expected_max_cycle_length(int n, double p);

// F(-x) == -F(x) over the whole state space.
bool check_negation_symmetry(const BooleanNetwork& net);

// Network file plus one `sign` line per clover arc.
std::string serialize_signed_clover(const CloverNetwork& clover);

}  // namespace dominet
