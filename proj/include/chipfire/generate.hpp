#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "chipfire/digraph.hpp"
#include "chipfire/numbers.hpp"

namespace chipfire {

/// Random weakly connected digraph: a randomly oriented spanning tree plus
/// `extra_edges` additional arcs, each pair's multiplicity capped at
/// max_multiplicity. Fully determined by the engine state.
Digraph random_connected_digraph(int n, int extra_edges, int max_multiplicity,
                                 std::mt19937_64& rng);

/// Random connected Eulerian digraph built by superposing closed walks: a
/// random cycle through all vertices (which makes the graph connected and
/// balanced) plus `extra_walks` random closed walks.
Digraph random_eulerian_digraph(int n, int extra_walks, std::mt19937_64& rng);

/// Random strongly connected, non-Eulerian digraph: an Eulerian base plus
/// extra arcs until some vertex is unbalanced. Requires n >= 2.
Digraph random_strongly_connected_non_eulerian(int n, int extra_walks, std::mt19937_64& rng);

/// Uniformly drop `total_chips` chips on n vertices, one at a time.
Vec random_distribution(int n, int total_chips, std::mt19937_64& rng);

// Seeded one-shot conveniences.
Digraph random_connected_digraph(int n, int extra_edges, int max_multiplicity,
                                 std::uint64_t seed);
Digraph random_eulerian_digraph(int n, int extra_walks, std::uint64_t seed);
Vec random_distribution(int n, int total_chips, std::uint64_t seed);

/// Enumerate every valid adjacency matrix on n vertices whose total edge
/// multiplicity is at most max_total, invoking fn on each weakly connected
/// digraph. Used by the exhaustive sweeps.
void for_each_connected_digraph(int n, int max_total,
                                const std::function<void(const Digraph&)>& fn);

/// All chip distributions on n vertices with the given exact total.
std::vector<Vec> all_distributions(int n, int total);

}  // namespace chipfire
