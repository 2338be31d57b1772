#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "chipfire/digraph.hpp"
#include "chipfire/game.hpp"
#include "chipfire/linalg.hpp"
#include "chipfire/numbers.hpp"

namespace chipfire {

enum class Verdict { Yes, No, UndecidedBudget };

enum class Method { NoNonnegF, Eulerian, RecurrentTarget, GreedyGeneral, OracleBfs };

const char* verdict_name(Verdict v);
const char* method_name(Method m);

/// Witness that x cannot reach y, checkable in polynomial time:
///   1. x + L f = y, f >= 0 and f reduced;
///   2. 0 <= g <= f with g != f;
///   3. every vertex with g(v) < f(v) cannot fire at x_g = x + L g.
struct ReachCertificate {
  Vec f;
  Vec g;
};

struct ReachResult {
  Verdict verdict = Verdict::No;
  Method method = Method::NoNonnegF;
  std::optional<GameTrace> witness;          // present on Yes (unless suppressed)
  std::optional<ReachCertificate> certificate;  // present on No when available
  std::optional<Vec> reduced_f;              // the reduced solve, when it exists
};

struct ReachOptions {
  std::uint64_t step_cap = kDefaultBudget;
  bool want_witness = true;
  // refuse to materialize witnesses with more runs than this
  std::uint64_t witness_run_cap = 1'000'000;
};

/// High-level work counters for the Eulerian decider. All three are
/// functions of the graph and of which level sets exist, never of the chip
/// magnitudes.
struct ReachStats {
  std::uint64_t set_checks = 0;
  std::uint64_t game_firings = 0;
  std::uint64_t solve_ops = 0;
};

/// Decomposition of a reduced firing vector f into its level sets
/// S_j = { v : f(v) >= t-j+1 }, j = 1..t, t = max f. Only the k <= n distinct
/// sets are stored, with a_i the first index at which the i-th set occurs.
struct AscendingChainPlan {
  Vec f;
  Int t;
  std::vector<std::vector<int>> sets;  // strictly ascending, sorted vertices
  std::vector<Int> first_index;        // a_1..a_k (a_1 = 1)
  Int end_index;                       // a_{k+1} = t+1
};

AscendingChainPlan build_ascending_chain_plan(const Vec& f);

/// The intermediate distribution x_j = x + sum_{l<j} L 1_{S_l} in closed
/// form, for 1 <= j <= t+1 (x_1 = x, x_{t+1} = x + L f).
Vec plan_distribution_at(const Digraph& g, const Vec& x, const AscendingChainPlan& plan,
                         const Int& j);

/// Strongly polynomial reachability decider for connected Eulerian digraphs:
/// solve for the reduced f, split it into the ascending chain of level sets,
/// and check each distinct set once, at its last occurrence. Throws
/// NotEulerian when the precondition fails.
ReachResult reach_eulerian(const Digraph& g, const Vec& x, const Vec& y,
                           const ReachOptions& opts = {}, ReachStats* stats = nullptr);

/// True iff some non-empty legal game transforms x back to itself; decided by
/// playing the bounded game with the primitive period vector as bound.
/// Requires a strongly connected graph. Polynomial for Eulerian graphs; in
/// general the period can be huge, hence the step budget.
bool is_recurrent(const Digraph& g, const Vec& x, std::uint64_t step_cap = kDefaultBudget);

/// Reachability via the recurrent-target theorems: YES when a nonnegative f
/// exists and every strongly connected component either has f = 0 on it or a
/// recurrent y restricted to it; definitive NO when no nonnegative f exists.
/// Absent result means the theorem does not apply and the caller must fall
/// back to another decider.
std::optional<ReachResult> reach_recurrent_target(const Digraph& g, const Vec& x,
                                                  const Vec& y,
                                                  const ReachOptions& opts = {});

/// Complete greedy decider: compute the reduced f and play the maximal
/// bounded game with bound f; reachable iff the game fires all of f. On NO
/// the pair (f, achieved firing vector) is packaged as a certificate. The
/// game may need exponentially many firings, hence UndecidedBudget.
ReachResult reach_greedy_general(const Digraph& g, const Vec& x, const Vec& y,
                                 const ReachOptions& opts = {});

/// Check the three certificate conditions exactly. True implies x cannot
/// reach y.
bool verify_nonreach_certificate(const Digraph& g, const Vec& x, const Vec& y,
                                 const ReachCertificate& cert);

/// Dispatcher: no nonnegative f -> NO; Eulerian -> the strongly polynomial
/// decider (with a greedy-attached certificate on NO); otherwise the
/// recurrent-target route, falling back to the greedy decider.
ReachResult reach_decide(const Digraph& g, const Vec& x, const Vec& y,
                         const ReachOptions& opts = {});

}  // namespace chipfire
