#pragma once

#include <string>
#include <vector>

#include "chipfire/numbers.hpp"

namespace chipfire {

/// Directed multigraph on vertices 0..n-1, stored as an n x n multiplicity
/// matrix (adj[u][v] = number of parallel edges u -> v). No loops; the
/// underlying undirected graph must be connected. Immutable once built.
class Digraph {
 public:
  explicit Digraph(std::vector<Vec> adjacency);

  int num_vertices() const { return n_; }
  const Mat& adjacency() const { return adj_; }
  const Int& multiplicity(int u, int v) const { return adj_[u][v]; }
  const Vec& out_degrees() const { return outdeg_; }
  const Vec& in_degrees() const { return indeg_; }
  const Int& out_degree(int v) const { return outdeg_[v]; }
  const Int& in_degree(int v) const { return indeg_[v]; }
  const Int& total_multiplicity() const { return total_; }

  bool operator==(const Digraph& other) const { return adj_ == other.adj_; }

 private:
  int n_;
  Mat adj_;
  Vec outdeg_;
  Vec indeg_;
  Int total_;
};

/// Strongly connected components in topological order: no edge from
/// components[i] to components[j] when i > j. Ties are broken by the
/// smallest vertex index contained in a component, so the decomposition is
/// deterministic for a fixed input.
struct SccDecomposition {
  std::vector<std::vector<int>> components;  // each sorted ascending
  std::vector<int> component_of;             // vertex -> component index
  std::vector<bool> is_sink;                 // no edge leaves the component
};

/// Parse the graph file format: '#' comment lines, then n, then n rows of n
/// whitespace-separated nonnegative multiplicities.
Digraph parse_digraph(const std::string& text);

/// Serialize back to the file format (without comments).
std::string write_digraph(const Digraph& g);

SccDecomposition scc_decompose(const Digraph& g);

/// True iff d+(v) = d-(v) for every vertex. Together with the connectivity
/// guaranteed at construction this implies strong connectivity.
bool is_eulerian(const Digraph& g);

/// L(u,v) = -d+(v) if u = v, multiplicity(v,u) otherwise. Firing v adds
/// column v to the distribution; every column sums to zero.
Mat laplacian(const Digraph& g);

/// Subgraph induced by `vertices` (which must be distinct). Vertex i of the
/// result is vertices[i]. The induced graph must itself be weakly connected.
Digraph induced_subgraph(const Digraph& g, const std::vector<int>& vertices);

/// True iff every ordered pair in `vertices` is connected by a directed path
/// that stays inside `vertices`.
bool strongly_connected_within(const Digraph& g, const std::vector<int>& vertices);

}  // namespace chipfire
