#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dominet/clover.hpp"
#include "dominet/landscape.hpp"

namespace dominet {

struct EnsembleParams {
  int n = 10;
  double p = 0.5;
  double q = 0.5;
  int runs = 500;
  std::uint64_t master_seed = 0;
};

// One sampled clover network compared against its induced automata
// network. Per-basin entries are ordered by the network component id.
struct RunRecord {
  int ell = 0;
  int depth = 0;
  int n_attractors = 0;
  double mean_period = 0;               // unweighted over attractors
  std::vector<double> size_ratios;      // |C_ind| / |C_net| per basin pair
  std::vector<double> dtau;             // mean-transient reduction per basin pair
  std::vector<double> dtau_max;         // max-transient reduction per basin pair
  bool bounds_ok = false;
};

// Samples the clover from stream (master_seed, run_index), builds the
// signed majority network, compares both landscapes, and asserts every
// landscape bound. Throws BoundViolationError on any failure.
RunRecord run_one(const EnsembleParams& params, int run_index);

struct ValueStats {
  double mean = 0;
  double std_error = 0;  // NaN when fewer than 2 samples
};

struct CellStats {
  double p = 0;
  double q = 0;
  int runs = 0;
  ValueStats n_attractors, mean_period, size_ratio, dtau, dtau_max, ell;
  // Alternative aggregation pooling the basins of all runs together.
  ValueStats pooled_size_ratio, pooled_dtau, pooled_dtau_max;
};

struct EnsembleStats {
  int n = 0;
  int runs = 0;
  std::vector<CellStats> cells;
};

// Per-basin quantities are averaged within a run first, then across runs.
EnsembleStats run_ensemble(const EnsembleParams& params, int workers = 1);

// Full (p,q) grid; cell (i,j) draws its runs from substream
// (master_seed, i*|qs|+j), so results do not depend on worker count.
EnsembleStats run_grid(int n, std::span<const double> ps, std::span<const double> qs, int runs,
                       std::uint64_t master_seed, int workers = 1);

std::string stats_to_csv(const EnsembleStats& stats, bool verbose = false);

// One JSON object per run; field order is fixed:
// run, ell, depth, n_attractors, mean_period, mean_size_ratio, mean_dtau,
// mean_dtau_max.
std::string run_to_log_line(const RunRecord& record, int run_index);

}  // namespace dominet
