#include "dominet/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "dominet/dominance.hpp"
#include "dominet/induced.hpp"

namespace dominet {

RunRecord run_one(const EnsembleParams& params, int run_index) {
  SplitMix64 rng = substream(params.master_seed, static_cast<std::uint64_t>(run_index));
  const CloverNetwork clover =
      assign_signs(generate_clover(params.n, params.p, rng), params.q, rng);
  const BooleanNetwork net = signed_majority_network(clover);
  const std::vector<Vertex> u{1};

  const DominanceReport dom = analyze_dominance(net.graph(), u);
  const InducedAutomata automata = build_induced(net, u);
  const int ell = automata.ell();
  if (ell != clover.max_cycle_length())
    throw BoundViolationError(fmt::format("recurrence length {} != max cycle length {}", ell,
                                          clover.max_cycle_length()));

  const TransitionDiagram net_diagram = transition_diagram(net);
  const LandscapeReport net_report = analyze(net_diagram);
  const TransitionDiagram ind_diagram = transition_diagram(automata);
  const LandscapeReport ind_report = analyze(ind_diagram);

  const int n = params.n;
  std::vector<std::uint32_t> h_image(net_diagram.size);
  for (std::uint32_t s = 0; s < net_diagram.size; ++s)
    h_image[s] = static_cast<std::uint32_t>(h_map(net, u, ell, Configuration(s, n)).bits());

  const BoundsReport bounds =
      check_bounds(net_report, ind_report, h_image, n, 1, dom.depth, ell);
  if (!bounds.all_satisfied) {
    for (const auto& row : bounds.rows)
      if (!row.satisfied)
        throw BoundViolationError(fmt::format("run {}: clause {} observed {} bound {}", run_index,
                                              row.clause, row.observed, row.bound));
  }

  RunRecord record;
  record.ell = ell;
  record.depth = dom.depth;
  record.n_attractors = static_cast<int>(net_report.basins.size());
  double period_sum = 0;
  for (const auto& basin : net_report.basins) period_sum += basin.period;
  record.mean_period = period_sum / record.n_attractors;

  for (const auto& basin : net_report.basins) {
    const std::int32_t g = ind_report.component_of[h_image[basin.cycle_states.front()]];
    const BasinRecord& paired = ind_report.basins[g];
    record.size_ratios.push_back(static_cast<double>(paired.basin_size) /
                                 static_cast<double>(basin.basin_size));
    record.dtau.push_back(basin.mean_transient() - paired.mean_transient());
    record.dtau_max.push_back(static_cast<double>(basin.max_transient) -
                              static_cast<double>(paired.max_transient));
  }
  record.bounds_ok = true;
  return record;
}

namespace {

double mean_of(std::span<const double> values) {
  double sum = 0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

ValueStats stats_of(std::span<const double> values) {
  ValueStats stats;
  stats.mean = mean_of(values);
  if (values.size() < 2) {
    stats.std_error = std::numeric_limits<double>::quiet_NaN();
    return stats;
  }
  double ss = 0;
  for (double v : values) ss += (v - stats.mean) * (v - stats.mean);
  stats.std_error = std::sqrt(ss / static_cast<double>(values.size() - 1) /
                              static_cast<double>(values.size()));
  return stats;
}

CellStats aggregate(double p, double q, std::span<const RunRecord> records) {
  CellStats cell;
  cell.p = p;
  cell.q = q;
  cell.runs = static_cast<int>(records.size());
  std::vector<double> n_attractors, mean_period, size_ratio, dtau, dtau_max, ell;
  std::vector<double> pooled_ratio, pooled_dtau, pooled_dtau_max;
  for (const auto& record : records) {
    n_attractors.push_back(record.n_attractors);
    mean_period.push_back(record.mean_period);
    size_ratio.push_back(mean_of(record.size_ratios));
    dtau.push_back(mean_of(record.dtau));
    dtau_max.push_back(mean_of(record.dtau_max));
    ell.push_back(record.ell);
    pooled_ratio.insert(pooled_ratio.end(), record.size_ratios.begin(), record.size_ratios.end());
    pooled_dtau.insert(pooled_dtau.end(), record.dtau.begin(), record.dtau.end());
    pooled_dtau_max.insert(pooled_dtau_max.end(), record.dtau_max.begin(),
                           record.dtau_max.end());
  }
  cell.n_attractors = stats_of(n_attractors);
  cell.mean_period = stats_of(mean_period);
  cell.size_ratio = stats_of(size_ratio);
  cell.dtau = stats_of(dtau);
  cell.dtau_max = stats_of(dtau_max);
  cell.ell = stats_of(ell);
  cell.pooled_size_ratio = stats_of(pooled_ratio);
  cell.pooled_dtau = stats_of(pooled_dtau);
  cell.pooled_dtau_max = stats_of(pooled_dtau_max);
  return cell;
}

std::vector<RunRecord> run_cell(const EnsembleParams& params, int workers) {
  std::vector<RunRecord> records(params.runs);
  if (workers <= 1) {
    for (int i = 0; i < params.runs; ++i) records[i] = run_one(params, i);
    return records;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= params.runs || failed.load()) return;
      try {
        records[i] = run_one(params, i);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failed.store(true);
        if (failure.empty()) failure = e.what();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failed.load()) throw BoundViolationError(failure);
  return records;
}

}  // namespace

EnsembleStats run_ensemble(const EnsembleParams& params, int workers) {
  if (params.runs < 1) throw std::invalid_argument("need at least one run");
  EnsembleStats stats;
  stats.n = params.n;
  stats.runs = params.runs;
  stats.cells.push_back(aggregate(params.p, params.q, run_cell(params, workers)));
  return stats;
}

EnsembleStats run_grid(int n, std::span<const double> ps, std::span<const double> qs, int runs,
                       std::uint64_t master_seed, int workers) {
  if (runs < 1) throw std::invalid_argument("need at least one run");
  EnsembleStats stats;
  stats.n = n;
  stats.runs = runs;
  std::uint64_t cell_index = 0;
  for (double p : ps) {
    for (double q : qs) {
      EnsembleParams params{n, p, q, runs, derive_seed(master_seed, cell_index)};
      ++cell_index;
      const auto records = run_cell(params, workers);
      stats.cells.push_back(aggregate(p, q, records));
    }
  }
  return stats;
}

std::string stats_to_csv(const EnsembleStats& stats, bool verbose) {
  std::string out =
      "p,q,runs,n_attractors_mean,n_attractors_se,period_mean,period_se,"
      "size_ratio_mean,size_ratio_se,dtau_mean,dtau_se,dtau_max_mean,dtau_max_se,"
      "ell_mean,ell_se";
  if (verbose)
    out +=
        ",pooled_size_ratio_mean,pooled_size_ratio_se,pooled_dtau_mean,pooled_dtau_se,"
        "pooled_dtau_max_mean,pooled_dtau_max_se";
  out += '\n';
  for (const auto& cell : stats.cells) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}", cell.p, cell.q, cell.runs,
                       cell.n_attractors.mean, cell.n_attractors.std_error, cell.mean_period.mean,
                       cell.mean_period.std_error, cell.size_ratio.mean, cell.size_ratio.std_error,
                       cell.dtau.mean, cell.dtau.std_error, cell.dtau_max.mean,
                       cell.dtau_max.std_error, cell.ell.mean, cell.ell.std_error);
    if (verbose)
      out += fmt::format(",{},{},{},{},{},{}", cell.pooled_size_ratio.mean,
                         cell.pooled_size_ratio.std_error, cell.pooled_dtau.mean,
                         cell.pooled_dtau.std_error, cell.pooled_dtau_max.mean,
                         cell.pooled_dtau_max.std_error);
    out += '\n';
  }
  return out;
}

std::string run_to_log_line(const RunRecord& record, int run_index) {
  return fmt::format(
      "{{\"run\":{},\"ell\":{},\"depth\":{},\"n_attractors\":{},\"mean_period\":{},"
      "\"mean_size_ratio\":{},\"mean_dtau\":{},\"mean_dtau_max\":{}}}",
      run_index, record.ell, record.depth, record.n_attractors, record.mean_period,
      mean_of(record.size_ratios), mean_of(record.dtau), mean_of(record.dtau_max));
}

}  // namespace dominet
