#include "dominet/clover.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <fmt/format.h>

namespace dominet {

std::vector<std::pair<Vertex, Vertex>> CloverNetwork::arcs() const {
  std::set<std::pair<Vertex, Vertex>> unique;
  for (const auto& cycle : cycles)
    for (std::size_t i = 0; i < cycle.size(); ++i)
      unique.emplace(cycle[i], cycle[(i + 1) % cycle.size()]);
  return {unique.begin(), unique.end()};
}

int CloverNetwork::max_cycle_length() const {
  int best = 0;
  for (const auto& cycle : cycles) best = std::max(best, static_cast<int>(cycle.size()));
  return best;
}

CloverNetwork generate_clover(int n, double p, SplitMix64& rng) {
  if (n < 2) throw std::invalid_argument("clover generation needs at least 2 vertices");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("folding probability must be in (0,1)");
  std::vector<Vertex> openers{2};
  for (Vertex m = 3; m <= n; ++m)
    if (rng.bernoulli(p)) openers.push_back(m);
  openers.push_back(n + 1);

  CloverNetwork clover;
  clover.n = n;
  for (std::size_t k = 0; k + 1 < openers.size(); ++k) {
    std::vector<Vertex> cycle{1};
    for (Vertex v = openers[k]; v < openers[k + 1]; ++v) cycle.push_back(v);
    clover.cycles.push_back(std::move(cycle));
  }
  return clover;
}

CloverNetwork assign_signs(CloverNetwork clover, double q, SplitMix64& rng) {
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("inhibition probability must be in [0,1]");
  clover.signs.clear();
  for (const auto& arc : clover.arcs()) clover.signs[arc] = rng.bernoulli(q) ? -1 : +1;
  return clover;
}

namespace {

int sign_of_arc(const CloverNetwork& clover, Vertex from, Vertex to) {
  const auto it = clover.signs.find({from, to});
  if (it == clover.signs.end())
    throw std::invalid_argument(fmt::format("arc ({},{}) has no sign", from, to));
  return it->second;
}

int majority(long sum, int self) { return sum != 0 ? (sum > 0 ? +1 : -1) : self; }

}  // namespace

int cycle_sign(const CloverNetwork& clover, std::span<const Vertex> cycle) {
  int sign = 1;
  for (std::size_t i = 0; i < cycle.size(); ++i)
    sign *= sign_of_arc(clover, cycle[i], cycle[(i + 1) % cycle.size()]);
  return sign;
}

SignSumVector sign_sum_vector(const CloverNetwork& clover) {
  SignSumVector result;
  result.sums.assign(clover.max_cycle_length(), 0);
  for (const auto& cycle : clover.cycles)
    result.sums[cycle.size() - 1] += cycle_sign(clover, cycle);
  return result;
}

BooleanNetwork signed_majority_network(const CloverNetwork& clover) {
  std::vector<std::vector<Vertex>> signed_inputs(clover.n);
  for (const auto& [arc, sign] : clover.signs) signed_inputs[arc.second - 1].push_back(arc.first);

  std::vector<LocalRule> rules(clover.n);
  for (Vertex v = 1; v <= clover.n; ++v) {
    std::vector<Vertex>& ins = signed_inputs[v - 1];
    std::sort(ins.begin(), ins.end());
    std::vector<Vertex> rule_inputs = ins;
    // Ties need the vertex's own state; give it a rule input when it can
    // actually tie and is not already an input.
    if (ins.size() % 2 == 0 && !std::binary_search(ins.begin(), ins.end(), v)) {
      rule_inputs.push_back(v);
      std::sort(rule_inputs.begin(), rule_inputs.end());
    }
    const std::size_t k = rule_inputs.size();
    std::vector<std::uint8_t> table(1ULL << k);
    for (std::size_t combo = 0; combo < table.size(); ++combo) {
      auto state_of = [&](Vertex w) {
        const auto it = std::lower_bound(rule_inputs.begin(), rule_inputs.end(), w);
        const std::size_t pos = it - rule_inputs.begin();
        return (combo >> (k - 1 - pos) & 1) ? +1 : -1;
      };
      long sum = 0;
      for (Vertex u : ins) sum += sign_of_arc(clover, u, v) * state_of(u);
      table[combo] = majority(sum, state_of(v)) > 0;
    }
    rules[v - 1] = LocalRule{std::move(rule_inputs), std::move(table)};
  }
  return BooleanNetwork(std::move(rules));
}

std::vector<std::uint8_t> clover_induced_rule(const SignSumVector& sums, int ell) {
  if (ell < 1 || sums.ell() > ell)
    throw std::invalid_argument("sign sums exceed the requested recurrence length");
  std::vector<std::uint8_t> table(1ULL << ell);
  for (std::size_t combo = 0; combo < table.size(); ++combo) {
    long sum = 0;
    int y0 = (combo >> (ell - 1) & 1) ? +1 : -1;
    for (int t = 1; t <= sums.ell(); ++t) {
      const int y = (combo >> (ell - t) & 1) ? +1 : -1;  // slice t-1
      sum += sums.sums[t - 1] * y;
    }
    table[combo] = majority(sum, y0) > 0;
  }
  return table;
}

double eta(int cycle_length, double q) {
  if (cycle_length < 1) throw std::invalid_argument("cycle length must be positive");
  return (std::pow(1.0 - 2.0 * q, cycle_length) + 1.0) / 2.0;
}

double expected_num_cycles(int n, double p) {
  if (n < 2) throw std::invalid_argument("need at least 2 vertices");
  return 1.0 + p * (n - 2);
}

std::vector<double> first_cycle_length_distribution(int n, double p) {
  if (n < 2) throw std::invalid_argument("need at least 2 vertices");
  std::vector<double> distribution(n + 1, 0.0);
  for (int len = 2; len <= n; ++len) {
    const double tail = std::pow(1.0 - p, len - 2);
    distribution[len] = len < n ? p * tail : tail;  // the full-length mass carries no factor p
  }
  return distribution;
}

double first_cycle_length_expectation(int n, double p) {
  const auto distribution = first_cycle_length_distribution(n, p);
  double expectation = 0;
  for (int len = 2; len <= n; ++len) expectation += len * distribution[len];
  return expectation;
}

MaxCycleLengthEstimate expected_max_cycle_length(int n, double p) {
  if (n < 3) throw std::invalid_argument("need at least 3 vertices");
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("estimates undefined for degenerate folding probability");
  MaxCycleLengthEstimate estimate;
  const double log1mp = std::log(1.0 - p);
  const long cycles = std::lround(1.0 + p * (n - 2));
  double sum = 0;
  for (long k = 1; k <= cycles; ++k) sum += (1.0 - std::pow(p, k)) / static_cast<double>(k);
  estimate.finite_sum = 1.0 + sum / -log1mp;
  estimate.asymptotic =
      (std::log(n) + std::log(p) + std::numbers::egamma - 1.0 / (1.0 - p)) / -log1mp;
  return estimate;
}

bool check_negation_symmetry(const BooleanNetwork& net) {
  const int n = net.vertex_count();
  if (n > kMaxEnumerationBits)
    throw SizeLimitError(fmt::format("verification over 2^{} states refused", n));
  for (std::uint64_t s = 0; s < (1ULL << n); ++s) {
    const Configuration x(s, n);
    if (step(net, x.negated()) != step(net, x).negated()) return false;
  }
  return true;
}

std::string serialize_signed_clover(const CloverNetwork& clover) {
  std::string out = serialize_network(signed_majority_network(clover));
  for (const auto& arc : clover.arcs())
    out += fmt::format("sign {} {} {}\n", arc.first, arc.second,
                       sign_of_arc(clover, arc.first, arc.second) > 0 ? "+1" : "-1");
  return out;
}

}  // namespace dominet
