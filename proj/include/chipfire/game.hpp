#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "chipfire/digraph.hpp"
#include "chipfire/numbers.hpp"

namespace chipfire {

/// One maximal run of identical firings. Traces are stored run-length
/// encoded so that games with long same-vertex bursts stay representable.
struct FiringRun {
  int vertex;
  Int count;
  bool operator==(const FiringRun&) const = default;
};

/// A legal game: replaying `runs` from `initial` passes the legality check at
/// every single firing and ends at `final_dist`.
struct GameTrace {
  Vec initial;
  std::vector<FiringRun> runs;
  Vec final_dist;
  Vec firing_vector;
  Int total_firings;
};

/// Which vertex to fire when several are legal. Maximal (bounded) games reach
/// the same firing vector under every policy; the random policy exists so the
/// tests can exercise exactly that.
enum class TieBreak { LowestIndex, HighestIndex, SeededRandom };

/// Vertices v with x(v) >= d+(v), ascending.
std::vector<int> legal_firings(const Digraph& g, const Vec& x);

/// x + L*1_v. Throws IllegalFiring when x(v) < d+(v).
Vec fire(const Digraph& g, const Vec& x, int v);

/// Play the maximal bounded game from x: repeatedly fire the policy's pick
/// among vertices that are legal and below their bound, until none is left.
/// step_cap bounds the number of individual firings; exceeding it throws
/// StepBudgetExceeded (only possible when step_cap < sum(bound)).
GameTrace run_bounded_game(const Digraph& g, const Vec& x, const Vec& bound,
                           std::uint64_t step_cap = kUnlimited,
                           TieBreak policy = TieBreak::LowestIndex,
                           std::uint64_t seed = 0);

/// Remove the first p(v) occurrences of every vertex v from the trace
/// (all occurrences when there are fewer than p(v)). For a period vector p
/// the result replays legally from the same initial distribution; if it does
/// not, ReplayFailure signals an implementation bug.
GameTrace delete_period_prefix(const Digraph& g, const GameTrace& trace, const Vec& p);

/// Final distribution after replaying `runs` from `initial`, or absent when
/// some firing is illegal.
std::optional<Vec> replay(const Digraph& g, const Vec& initial,
                          const std::vector<FiringRun>& runs);

/// Append a run to an RLE trace, merging with the last run when possible.
void append_run(std::vector<FiringRun>& runs, int vertex, const Int& count);

}  // namespace chipfire
