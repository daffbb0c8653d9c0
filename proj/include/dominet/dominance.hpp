#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "dominet/netcore.hpp"

namespace dominet {

// The maximal set determined by w: every vertex whose whole input set
// lies inside w.
std::vector<Vertex> boundary(const DirectedGraph& graph, std::span<const Vertex> w);

// True iff the subgraph induced on the complement of u is acyclic,
// i.e. every directed cycle meets u.
bool is_dominant(const DirectedGraph& graph, std::span<const Vertex> u);

// Vertices lying on at least one directed cycle.
std::vector<Vertex> vertices_on_cycles(const DirectedGraph& graph);

// Determination chain U_0 = u, U_{i+1} = U_i union boundary(U_i), up to V.
// Throws NotDominantError if the iteration stalls before reaching V.
std::vector<std::vector<Vertex>> chain_of(const DirectedGraph& graph, std::span<const Vertex> u);

// All lengths of simple paths from `from` to `to` whose interior vertices
// avoid u. Sorted ascending; empty when no such path exists.
std::vector<int> path_lengths(const DirectedGraph& graph, std::span<const Vertex> u,
                              Vertex from, Vertex to);

int recurrence_length(const DirectedGraph& graph, std::span<const Vertex> u);

// Arcs of the reduced graph on u: (u',u) present iff some u-interior-free
// simple path runs from u' to u.
std::vector<std::pair<Vertex, Vertex>> reduced_graph(const DirectedGraph& graph,
                                                     std::span<const Vertex> u);

// All dominant sets of minimum cardinality, each ascending, the list
// sorted lexicographically. Exact search; throws SizeLimitError above
// kMaxEnumerationBits vertices.
std::vector<std::vector<Vertex>> minimum_dominant_sets(const DirectedGraph& graph);

struct DominanceReport {
  std::vector<Vertex> dominant_set;
  std::vector<std::vector<Vertex>> chain;  // U_0 .. U_d
  int depth = 0;
  int recurrence_length = 0;
  std::vector<std::pair<Vertex, Vertex>> reduced_arcs;
  std::map<std::pair<Vertex, Vertex>, std::vector<int>> path_lengths;
};

DominanceReport analyze_dominance(const DirectedGraph& graph, std::span<const Vertex> u);

std::string report_to_text(const DominanceReport& report);
std::string report_to_csv(const DominanceReport& report);

}  // namespace dominet
