#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "chipfire/digraph.hpp"
#include "chipfire/game.hpp"
#include "chipfire/numbers.hpp"

namespace chipfire {

enum class HaltVerdict { Terminating, NonTerminating, UndecidedBudget };

const char* halt_verdict_name(HaltVerdict v);

/// Outcome of playing one maximal legal game. Whatever one game does, all
/// games do, so one simulation decides the distribution.
struct HaltingResult {
  HaltVerdict verdict = HaltVerdict::UndecidedBudget;
  // Terminating: the halted distribution and the full firing vector.
  Vec final_dist;
  Vec firing_vector;
  // NonTerminating: a distribution visited twice and the cycle returning to
  // it. prefix_runs holds the game up to the repeated distribution's first
  // visit; for a terminating game it holds the whole game instead.
  std::optional<Vec> repeated;
  std::vector<FiringRun> prefix_runs;
  std::vector<FiringRun> cycle_runs;
};

/// Play a maximal legal game from x, recording visited distributions.
/// Terminating when no firing is legal; non-terminating as soon as a
/// distribution repeats; undecided after state_cap distinct states.
HaltingResult decide_halting(const Digraph& g, const Vec& x,
                             std::uint64_t state_cap = kDefaultBudget,
                             TieBreak policy = TieBreak::LowestIndex,
                             std::uint64_t seed = 0);

/// Witness that x is non-terminating on a connected Eulerian digraph: a
/// recurrent distribution linearly equivalent to x.
struct HaltingCertificate {
  Vec y;
};

/// The first distribution the simulated game visits twice, or absent when x
/// terminates. Throws NotEulerian / StateBudgetExceeded.
std::optional<HaltingCertificate> make_halting_certificate(const Digraph& g, const Vec& x,
                                                           std::uint64_t state_cap = kDefaultBudget);

/// True iff cert.y is recurrent and linearly equivalent to x; true implies x
/// is non-terminating. Throws NotEulerian.
bool verify_halting_certificate(const Digraph& g, const Vec& x, const HaltingCertificate& cert,
                                std::uint64_t step_cap = kDefaultBudget);

}  // namespace chipfire
