#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dominet/netcore.hpp"

namespace dominet {

// Functional graph of a finite dynamical system: exactly one successor
// per state, so every connected component is a cycle with trees hanging
// off it.
struct TransitionDiagram {
  std::uint32_t size = 0;
  std::vector<std::uint32_t> successor;
};

TransitionDiagram transition_diagram(std::uint64_t size,
                                     const std::function<std::uint32_t(std::uint32_t)>& next);
TransitionDiagram transition_diagram(const BooleanNetwork& net);

struct BasinRecord {
  int component = 0;
  int period = 0;                 // cycle length
  std::uint32_t basin_size = 0;   // component size
  std::uint64_t transient_sum = 0;
  std::uint32_t max_transient = 0;
  std::vector<std::uint32_t> cycle_states;  // in successor order from the smallest

  // Exact rational transient_sum / basin_size, rendered as decimal in reports.
  double mean_transient() const {
    return static_cast<double>(transient_sum) / static_cast<double>(basin_size);
  }
};

struct LandscapeReport {
  std::uint32_t size = 0;
  std::vector<BasinRecord> basins;           // indexed by component id
  std::vector<std::int32_t> component_of;    // per state
  std::vector<std::uint32_t> transient_of;   // per state
};

LandscapeReport analyze(const TransitionDiagram& diagram);

struct BoundsRow {
  std::string clause;
  double observed = 0;
  double bound = 0;
  bool satisfied = false;
};

struct BoundsReport {
  std::vector<BoundsRow> rows;
  bool all_satisfied = true;
};

// Evaluates the landscape bounds linking a network report to the report of
// its induced automata network: per-period counts, maximal prime period,
// attractor count, per-state transient sandwich, per-basin size sandwich,
// plus equality of component counts and of linked periods. h_image maps
// every network state index to its induced state index.
BoundsReport check_bounds(const LandscapeReport& net_report, const LandscapeReport& induced_report,
                          std::span<const std::uint32_t> h_image, int num_vertices,
                          int num_dominant, int depth, int ell);

// Extremal constructions.
BooleanNetwork extremal_cycle_network(int period);
BooleanNetwork extremal_debruijn_network(int ell);
BooleanNetwork extremal_chain_network(int n);

std::string landscape_to_csv(const LandscapeReport& report);
std::string bounds_to_csv(const BoundsReport& report);

}  // namespace dominet
