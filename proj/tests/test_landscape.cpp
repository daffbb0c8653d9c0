#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "dominet/induced.hpp"
#include "dominet/landscape.hpp"
#include "helpers.hpp"

using namespace dominet;
using namespace testutil;

TEST_SUITE("landscape") {

TEST_CASE("transition_diagram basics") {
  const TransitionDiagram identity2 =
      transition_diagram(2, [](std::uint32_t s) { return s; });
  const LandscapeReport rep = analyze(identity2);
  CHECK(rep.basins.size() == 2);  // two self-loops

  const TransitionDiagram constant =
      transition_diagram(10, [](std::uint32_t) { return 3u; });
  const LandscapeReport crep = analyze(constant);
  REQUIRE(crep.basins.size() == 1);
  CHECK(crep.basins[0].period == 1);
  CHECK(crep.basins[0].max_transient <= 1);
  CHECK(crep.basins[0].basin_size == 10);

  CHECK_THROWS_AS(transition_diagram(1ULL << 30, [](std::uint32_t s) { return s; }),
                  SizeLimitError);
}

TEST_CASE("fig1 system: two components, period 8, basins of 16") {
  const LandscapeReport rep = analyze(transition_diagram(fig1_network()));
  REQUIRE(rep.basins.size() == 2);
  for (const auto& basin : rep.basins) {
    CHECK(basin.period == 8);
    CHECK(basin.basin_size == 16);
  }
}

TEST_CASE("fig3 induced system: 4 states onto a fixed point") {
  const InducedAutomata automata = build_induced(fig3_network(), std::vector<Vertex>{1});
  const TransitionDiagram diagram = transition_diagram(automata);
  REQUIRE(diagram.size == 4);
  // (y0,y1) -> (-1, y0): successor drops the oldest slice and prepends -1
  for (std::uint32_t s = 0; s < 4; ++s) {
    const HistoryState y(s, 1, 2);
    const HistoryState next(diagram.successor[s], 1, 2);
    CHECK(next.value(0, 0) == -1);
    CHECK(next.value(0, 1) == y.value(0, 0));
  }
  const LandscapeReport rep = analyze(diagram);
  REQUIRE(rep.basins.size() == 1);
  CHECK(rep.basins[0].period == 1);
  CHECK(rep.basins[0].max_transient == 2);
}

TEST_CASE("fig4 system: one attractor of period 4 over 32 states") {
  const LandscapeReport rep =
      analyze(transition_diagram(signed_majority_network(fig4_clover())));
  REQUIRE(rep.basins.size() == 1);
  CHECK(rep.basins[0].period == 4);
  CHECK(rep.basins[0].basin_size == 32);
}

TEST_CASE("analyze matches forward-walk oracle on random functional graphs") {
  SplitMix64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint32_t size = 2 + static_cast<std::uint32_t>(rng.next() % 200);
    TransitionDiagram diagram;
    diagram.size = size;
    diagram.successor.resize(size);
    for (auto& s : diagram.successor) s = static_cast<std::uint32_t>(rng.next() % size);
    const LandscapeReport rep = analyze(diagram);

    std::uint64_t total = 0;
    for (const auto& basin : rep.basins) {
      total += basin.basin_size;
      CHECK(basin.period == static_cast<int>(basin.cycle_states.size()));
      CHECK(basin.period >= 1);
      CHECK(static_cast<std::uint32_t>(basin.period) <= basin.basin_size);
    }
    CHECK(total == size);

    for (std::uint32_t s = 0; s < size; ++s) {
      const OrbitFacts facts = orbit_oracle(diagram, s);
      CHECK(rep.transient_of[s] == static_cast<std::uint32_t>(facts.transient));
      CHECK(rep.basins[rep.component_of[s]].period == facts.period);
    }
  }
}

TEST_CASE("analyze is independent of state enumeration order") {
  SplitMix64 rng(62);
  TransitionDiagram diagram;
  diagram.size = 64;
  diagram.successor.resize(64);
  for (auto& s : diagram.successor) s = static_cast<std::uint32_t>(rng.next() % 64);

  std::vector<std::uint32_t> perm(64);
  std::iota(perm.begin(), perm.end(), 0u);
  for (std::uint32_t i = 63; i > 0; --i) std::swap(perm[i], perm[rng.next() % (i + 1)]);
  TransitionDiagram relabeled;
  relabeled.size = 64;
  relabeled.successor.resize(64);
  for (std::uint32_t s = 0; s < 64; ++s) relabeled.successor[perm[s]] = perm[diagram.successor[s]];

  auto summary = [](const LandscapeReport& rep) {
    std::vector<std::tuple<int, std::uint32_t, std::uint64_t, std::uint32_t>> rows;
    for (const auto& basin : rep.basins)
      rows.emplace_back(basin.period, basin.basin_size, basin.transient_sum, basin.max_transient);
    std::sort(rows.begin(), rows.end());
    return rows;
  };
  CHECK(summary(analyze(diagram)) == summary(analyze(relabeled)));
}

TEST_CASE("extremal cycle networks") {
  const LandscapeReport rep3 = analyze(transition_diagram(extremal_cycle_network(3)));
  std::uint64_t per3 = 0;
  for (const auto& basin : rep3.basins)
    if (3 % basin.period == 0) per3 += basin.period;
  CHECK(per3 == 8);  // every state is 3-periodic

  const LandscapeReport rep1 = analyze(transition_diagram(extremal_cycle_network(1)));
  CHECK(rep1.basins.size() == 2);  // two fixed points

  const LandscapeReport rep4 = analyze(transition_diagram(extremal_cycle_network(4)));
  std::vector<int> periods;
  for (const auto& basin : rep4.basins) periods.push_back(basin.period);
  std::sort(periods.begin(), periods.end());
  CHECK(periods == std::vector<int>{1, 1, 2, 4, 4, 4});  // necklace classes of 16 states
}

TEST_CASE("extremal de Bruijn networks") {
  SUBCASE("ell = 1 is the negation loop") {
    const BooleanNetwork net = extremal_debruijn_network(1);
    CHECK(net.rule(1).table == negation_table());
    const LandscapeReport rep = analyze(transition_diagram(net));
    REQUIRE(rep.basins.size() == 1);
    CHECK(rep.basins[0].period == 2);
  }
  SUBCASE("induced orbit covers every history once") {
    for (int ell : {2, 3, 4}) {
      const BooleanNetwork net = extremal_debruijn_network(ell);
      const InducedAutomata automata = build_induced(net, std::vector<Vertex>{1});
      CHECK(automata.ell() == ell);
      const LandscapeReport rep = analyze(transition_diagram(automata));
      REQUIRE(rep.basins.size() == 1);
      CHECK(rep.basins[0].period == 1 << ell);
      CHECK(rep.basins[0].basin_size == 1u << ell);
    }
  }
}

TEST_CASE("extremal chain networks") {
  const LandscapeReport rep3 = analyze(transition_diagram(extremal_chain_network(3)));
  REQUIRE(rep3.basins.size() == 2);
  for (const auto& basin : rep3.basins) {
    CHECK(basin.period == 1);
    CHECK(basin.basin_size == 4);
  }

  const LandscapeReport rep1 = analyze(transition_diagram(extremal_chain_network(1)));
  CHECK(rep1.basins.size() == 2);
  for (const auto& basin : rep1.basins) CHECK(basin.max_transient == 0);

  const BooleanNetwork chain5 = extremal_chain_network(5);
  const LandscapeReport rep5 = analyze(transition_diagram(chain5));
  const Configuration start = Configuration::all_plus(5).with_state(1, -1);
  CHECK(rep5.transient_of[start.bits()] == 4);
}

TEST_CASE("csv rendering") {
  const LandscapeReport rep = analyze(transition_diagram(fig1_network()));
  const std::string csv = landscape_to_csv(rep);
  CHECK(csv.find("component,period,basin_size,mean_transient,max_transient\n") == 0);
  CHECK(csv.find("0,8,16,") != std::string::npos);
}

}  // TEST_SUITE
