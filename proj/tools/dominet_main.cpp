// dominet: dominant-vertex reduction of Boolean networks.
//
// Subcommands cover the whole pipeline: dominant-set analysis, induced
// automata construction, landscape enumeration, eventual-conjugacy
// verification, clover generation, ensemble statistics, extremal network
// construction, and the closed-form analytics.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "dominet/clover.hpp"
#include "dominet/dominance.hpp"
#include "dominet/ensemble.hpp"
#include "dominet/induced.hpp"
#include "dominet/landscape.hpp"
#include "dominet/netcore.hpp"

namespace {

using namespace dominet;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInternal = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::fputs(content.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path));
  out << content;
}

std::string join_ids(const std::vector<Vertex>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ' ';
    out += fmt::format("{}", ids[i]);
  }
  return out;
}

std::vector<Vertex> parse_vertex_list(const std::string& csv) {
  std::vector<Vertex> vertices;
  std::istringstream in(csv);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token.empty()) throw std::runtime_error("empty vertex id in --set");
    vertices.push_back(std::stoi(token));
  }
  if (vertices.empty()) throw std::runtime_error("--set needs at least one vertex id");
  std::sort(vertices.begin(), vertices.end());
  return vertices;
}

struct Options {
  std::string net_path;
  std::string set_csv;
  std::string out_path;
  std::string format = "text";
  bool minimal = false;
  bool verbose = false;
  int n = 10;
  std::vector<double> p;
  std::vector<double> q;
  int runs = 500;
  std::uint64_t seed = 0;
  int workers = 1;
  int ell = 1;
  int period = 1;
};

double single(const std::vector<double>& values, const char* flag) {
  if (values.size() != 1)
    throw std::runtime_error(fmt::format("exactly one {} value required here", flag));
  return values.front();
}

int cmd_dominant(const Options& opt) {
  const BooleanNetwork net = parse_network(read_file(opt.net_path));
  std::string out;
  if (opt.minimal) {
    const auto sets = minimum_dominant_sets(net.graph());
    if (opt.format == "csv") {
      for (const auto& set : sets) out += join_ids(set) + "\n";
    } else {
      out = fmt::format("minimum dominant sets: {} (size {})\n", sets.size(),
                        sets.empty() ? 0 : sets.front().size());
      for (const auto& set : sets) out += join_ids(set) + "\n";
    }
  } else {
    if (opt.set_csv.empty()) throw std::runtime_error("need --set or --minimal");
    const auto report = analyze_dominance(net.graph(), parse_vertex_list(opt.set_csv));
    out = opt.format == "csv" ? report_to_csv(report) : report_to_text(report);
  }
  write_output(opt.out_path, out);
  return kExitOk;
}

int cmd_induce(const Options& opt) {
  const BooleanNetwork net = parse_network(read_file(opt.net_path));
  const InducedAutomata automata = build_induced(net, parse_vertex_list(opt.set_csv));
  write_output(opt.out_path, serialize_induced(automata));
  return kExitOk;
}

int cmd_landscape(const Options& opt) {
  const BooleanNetwork net = parse_network(read_file(opt.net_path));
  LandscapeReport report;
  if (opt.set_csv.empty()) {
    report = analyze(transition_diagram(net));
  } else {
    const InducedAutomata automata = build_induced(net, parse_vertex_list(opt.set_csv));
    report = analyze(transition_diagram(automata));
  }
  std::string out = landscape_to_csv(report);
  if (opt.format == "text")
    out = fmt::format("states: {}\nattractors: {}\n", report.size, report.basins.size()) + out;
  write_output(opt.out_path, out);
  return kExitOk;
}

int cmd_verify(const Options& opt) {
  const BooleanNetwork net = parse_network(read_file(opt.net_path));
  const std::vector<Vertex> u = parse_vertex_list(opt.set_csv);
  const DominanceReport dom = analyze_dominance(net.graph(), u);
  const InducedAutomata automata = build_induced(net, u);

  const bool semiconjugate = verify_semiconjugacy(net, automata);
  const bool injective = verify_injective_on_periodics(net, u);

  const int n = net.vertex_count();
  const LandscapeReport net_report = analyze(transition_diagram(net));
  const LandscapeReport ind_report = analyze(transition_diagram(automata));
  std::vector<std::uint32_t> h_image(net_report.size);
  for (std::uint32_t s = 0; s < net_report.size; ++s)
    h_image[s] = static_cast<std::uint32_t>(
        h_map(net, automata.dominant_set(), automata.ell(), Configuration(s, n)).bits());
  const BoundsReport bounds = check_bounds(net_report, ind_report, h_image, n,
                                           automata.num_vertices(), dom.depth, automata.ell());

  std::string out;
  if (opt.format != "csv") {
    out += fmt::format("semiconjugacy: {}\n", semiconjugate ? "OK" : "FAILED");
    out += fmt::format("injective on periodic configurations: {}\n", injective ? "OK" : "FAILED");
    out += fmt::format("depth: {}\nrecurrence length: {}\n", dom.depth, automata.ell());
  }
  out += bounds_to_csv(bounds);
  write_output(opt.out_path, out);

  if (!semiconjugate || !injective) {
    std::fputs("bound-violation: eventual conjugacy checks failed\n", stderr);
    return kExitInternal;
  }
  if (!bounds.all_satisfied) {
    std::fputs("bound-violation: landscape bounds failed (see report)\n", stderr);
    return kExitInternal;
  }
  return kExitOk;
}

int cmd_clover_gen(const Options& opt) {
  SplitMix64 rng(opt.seed);
  const CloverNetwork clover =
      assign_signs(generate_clover(opt.n, single(opt.p, "--p"), rng), single(opt.q, "--q"), rng);
  write_output(opt.out_path, serialize_signed_clover(clover));
  return kExitOk;
}

int cmd_ensemble(const Options& opt) {
  const std::vector<double> ps = opt.p.empty() ? std::vector<double>{0.5} : opt.p;
  const std::vector<double> qs = opt.q.empty() ? std::vector<double>{0.5} : opt.q;
  if (opt.verbose) {
    std::uint64_t cell_index = 0;
    for (double p : ps)
      for (double q : qs) {
        const EnsembleParams params{opt.n, p, q,opt.runs,
                                    ps.size() * qs.size() == 1
                                        ? opt.seed
                                        : derive_seed(opt.seed, cell_index)};
        ++cell_index;
        for (int i = 0; i < opt.runs; ++i)
          std::fputs((run_to_log_line(run_one(params, i), i) + "\n").c_str(), stdout);
      }
  }
  EnsembleStats stats;
  if (ps.size() * qs.size() == 1) {
    stats = run_ensemble(EnsembleParams{opt.n, ps[0], qs[0], opt.runs, opt.seed}, opt.workers);
  } else {
    stats = run_grid(opt.n, ps, qs, opt.runs, opt.seed, opt.workers);
  }
  write_output(opt.out_path, stats_to_csv(stats, opt.verbose));
  return kExitOk;
}

int cmd_extremal(const std::string& variant, const Options& opt) {
  BooleanNetwork net = variant == "cycle"      ? extremal_cycle_network(opt.period)
                       : variant == "debruijn" ? extremal_debruijn_network(opt.ell)
                                               : extremal_chain_network(opt.n);
  write_output(opt.out_path, serialize_network(net));
  return kExitOk;
}

int cmd_analytic(const std::string& what, const Options& opt) {
  std::string out;
  if (what == "eta") {
    out = fmt::format("eta({}, {}) = {}\n", opt.ell, single(opt.q, "--q"),
                      eta(opt.ell, single(opt.q, "--q")));
  } else if (what == "ncycles") {
    out = fmt::format("expected cycles({}, {}) = {}\n", opt.n, single(opt.p, "--p"),
                      expected_num_cycles(opt.n, single(opt.p, "--p")));
  } else if (what == "ell1") {
    const double p = single(opt.p, "--p");
    const auto dist = first_cycle_length_distribution(opt.n, p);
    out = "length,probability\n";
    for (int len = 2; len <= opt.n; ++len) out += fmt::format("{},{}\n", len, dist[len]);
    out += fmt::format("expectation,{}\n", first_cycle_length_expectation(opt.n, p));
  } else {  // maxell
    const auto est = expected_max_cycle_length(opt.n, single(opt.p, "--p"));
    out = fmt::format("finite_sum,{}\nasymptotic,{}\n", est.finite_sum, est.asymptotic);
  }
  write_output(opt.out_path, out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dominant-vertex reduction of Boolean networks"};
  app.name("dominet");
  app.require_subcommand(1);
  Options opt;

  auto add_net = [&](CLI::App* cmd, bool required = true) {
    auto* o = cmd->add_option("--net", opt.net_path, "network file (boolnet format)");
    if (required) o->required();
  };
  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", opt.out_path, "output path (default stdout)");
  };
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "csv"}));
  };

  auto* dominant = app.add_subcommand("dominant", "dominant sets: analyze or enumerate minimal");
  add_net(dominant);
  dominant->add_option("--set", opt.set_csv, "comma-separated vertex ids");
  dominant->add_flag("--minimal", opt.minimal, "list all minimum dominant sets");
  add_out(dominant);
  add_format(dominant);

  auto* induce = app.add_subcommand("induce", "build the induced automata network");
  add_net(induce);
  induce->add_option("--set", opt.set_csv, "comma-separated vertex ids")->required();
  add_out(induce);

  auto* landscape_cmd = app.add_subcommand("landscape", "attractor landscape of a network");
  add_net(landscape_cmd);
  landscape_cmd->add_option("--set", opt.set_csv,
                            "analyze the automata network induced by these vertices instead");
  add_out(landscape_cmd);
  add_format(landscape_cmd);

  auto* verify = app.add_subcommand("verify", "eventual conjugacy and landscape bounds");
  add_net(verify);
  verify->add_option("--set", opt.set_csv, "comma-separated vertex ids")->required();
  add_out(verify);
  add_format(verify);

  auto* clover_gen = app.add_subcommand("clover-gen", "sample a signed clover network");
  clover_gen->add_option("--n", opt.n, "vertex count")->required();
  clover_gen->add_option("--p", opt.p, "folding probability")->required();
  clover_gen->add_option("--q", opt.q, "inhibition probability")->required();
  clover_gen->add_option("--seed", opt.seed, "random seed")->required();
  add_out(clover_gen);

  auto* ensemble = app.add_subcommand("ensemble", "clover ensemble statistics");
  ensemble->add_option("--n", opt.n, "vertex count");
  ensemble->add_option("--p", opt.p, "folding probability (repeat for a grid)")->required();
  ensemble->add_option("--q", opt.q, "inhibition probability (repeat for a grid)")->required();
  ensemble->add_option("--runs", opt.runs, "runs per (p,q) cell");
  ensemble->add_option("--seed", opt.seed, "master seed")->required();
  ensemble->add_option("--workers", opt.workers, "worker threads");
  ensemble->add_flag("--verbose", opt.verbose, "per-run log lines and pooled aggregation");
  add_out(ensemble);

  auto* extremal = app.add_subcommand("extremal", "bound-achieving network constructions");
  extremal->require_subcommand(1);
  auto* ext_cycle = extremal->add_subcommand("cycle", "identity rules on a directed cycle");
  ext_cycle->add_option("--period", opt.period, "cycle length")->required();
  add_out(ext_cycle);
  auto* ext_debruijn = extremal->add_subcommand("debruijn", "full-period feedback shift register");
  ext_debruijn->add_option("--ell", opt.ell, "history length")->required();
  add_out(ext_debruijn);
  auto* ext_chain = extremal->add_subcommand("chain", "self-loop head with a forward chain");
  ext_chain->add_option("--n", opt.n, "vertex count")->required();
  add_out(ext_chain);

  auto* analytic = app.add_subcommand("analytic", "closed-form ensemble quantities");
  analytic->require_subcommand(1);
  auto* a_eta = analytic->add_subcommand("eta", "probability of a positive cycle sign");
  a_eta->add_option("--ell", opt.ell, "cycle length")->required();
  a_eta->add_option("--q", opt.q, "inhibition probability")->required();
  add_out(a_eta);
  auto* a_ncycles = analytic->add_subcommand("ncycles", "expected cycle count");
  a_ncycles->add_option("--n", opt.n, "vertex count")->required();
  a_ncycles->add_option("--p", opt.p, "folding probability")->required();
  add_out(a_ncycles);
  auto* a_ell1 = analytic->add_subcommand("ell1", "first cycle length distribution");
  a_ell1->add_option("--n", opt.n, "vertex count")->required();
  a_ell1->add_option("--p", opt.p, "folding probability")->required();
  add_out(a_ell1);
  auto* a_maxell = analytic->add_subcommand("maxell", "expected maximal cycle length");
  a_maxell->add_option("--n", opt.n, "vertex count")->required();
  a_maxell->add_option("--p", opt.p, "folding probability")->required();
  add_out(a_maxell);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::fputs(fmt::format("error: {}\n", e.what()).c_str(), stderr);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(dominant)) return cmd_dominant(opt);
    if (app.got_subcommand(induce)) return cmd_induce(opt);
    if (app.got_subcommand(landscape_cmd)) return cmd_landscape(opt);
    if (app.got_subcommand(verify)) return cmd_verify(opt);
    if (app.got_subcommand(clover_gen)) return cmd_clover_gen(opt);
    if (app.got_subcommand(ensemble)) return cmd_ensemble(opt);
    if (app.got_subcommand(extremal)) {
      for (const char* variant : {"cycle", "debruijn", "chain"})
        if (extremal->got_subcommand(variant)) return cmd_extremal(variant, opt);
    }
    if (app.got_subcommand(analytic)) {
      for (const char* what : {"eta", "ncycles", "ell1", "maxell"})
        if (analytic->got_subcommand(what)) return cmd_analytic(what, opt);
    }
    std::fputs("error: no subcommand\n", stderr);
    return kExitUsage;
  } catch (const BoundViolationError& e) {
    std::fputs(fmt::format("bound-violation: {}\n", e.what()).c_str(), stderr);
    return kExitInternal;
  } catch (const DepthExceededError& e) {
    std::fputs(fmt::format("error: internal: {}\n", e.what()).c_str(), stderr);
    return kExitInternal;
  } catch (const std::exception& e) {
    std::fputs(fmt::format("error: {}\n", e.what()).c_str(), stderr);
    return kExitUsage;
  }
}
