#pragma once

#include <cstdint>
#include <vector>

#include "chipfire/digraph.hpp"
#include "chipfire/numbers.hpp"

namespace chipfire {

struct OracleOptions {
  std::uint64_t max_states = kDefaultBudget;
  bool parallel = true;  // expand BFS frontiers with OpenMP when available
};

/// Ground-truth reachability: breadth-first search over the state graph whose
/// nodes are chip distributions and whose arcs are single legal firings.
/// Exact whenever it completes; throws StateBudgetExceeded after generating
/// more than max_states distinct states. The parallel and serial variants
/// explore level by level and are verdict-identical by construction.
bool reach_oracle_bfs(const Digraph& g, const Vec& x, const Vec& y,
                      const OracleOptions& opts = {});

/// Serial reference implementation, kept for testing and benchmarking the
/// parallel frontier expansion against.
bool reach_oracle_bfs_serial(const Digraph& g, const Vec& x, const Vec& y,
                             std::uint64_t max_states = kDefaultBudget);

/// All distributions reachable from x, in BFS discovery order (serial,
/// deterministic). Throws StateBudgetExceeded past the cap.
std::vector<Vec> enumerate_reachable(const Digraph& g, const Vec& x,
                                     std::uint64_t max_states = kDefaultBudget);

}  // namespace chipfire
