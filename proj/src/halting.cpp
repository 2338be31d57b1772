#include "chipfire/halting.hpp"

#include <random>
#include <unordered_map>

#include "chipfire/errors.hpp"
#include "chipfire/linalg.hpp"
#include "chipfire/reach.hpp"

namespace chipfire {

const char* halt_verdict_name(HaltVerdict v) {
  switch (v) {
    case HaltVerdict::Terminating: return "TERMINATING";
    case HaltVerdict::NonTerminating: return "NON_TERMINATING";
    case HaltVerdict::UndecidedBudget: return "UNDECIDED_BUDGET";
  }
  return "?";
}

HaltingResult decide_halting(const Digraph& g, const Vec& x, std::uint64_t state_cap,
                             TieBreak policy, std::uint64_t seed) {
  int n = g.num_vertices();
  if (static_cast<int>(x.size()) != n)
    throw ValidationError("distribution size does not match the graph");
  if (!is_nonneg(x)) throw ValidationError("chip distribution must be nonnegative");

  HaltingResult res;
  res.firing_vector = zero_vec(n);

  // step index at which each distribution was first seen
  std::unordered_map<Vec, std::uint64_t, VecHash> seen;
  std::vector<int> fired;  // one entry per step; bounded by state_cap
  seen.emplace(x, 0);
  Vec cur = x;
  std::mt19937_64 rng(seed);

  while (true) {
    std::vector<int> cands = legal_firings(g, cur);
    if (cands.empty()) {
      res.verdict = HaltVerdict::Terminating;
      res.final_dist = std::move(cur);
      for (int s : fired) append_run(res.prefix_runs, s, 1);
      return res;
    }
    int v;
    switch (policy) {
      case TieBreak::LowestIndex: v = cands.front(); break;
      case TieBreak::HighestIndex: v = cands.back(); break;
      default:
        v = cands[std::uniform_int_distribution<std::size_t>(0, cands.size() - 1)(rng)];
    }
    cur = fire(g, cur, v);
    fired.push_back(v);
    res.firing_vector[v] += 1;

    auto it = seen.find(cur);
    if (it != seen.end()) {
      res.verdict = HaltVerdict::NonTerminating;
      res.repeated = cur;
      std::uint64_t first = it->second;
      for (std::uint64_t s = 0; s < fired.size(); ++s) {
        if (s < first)
          append_run(res.prefix_runs, fired[s], 1);
        else
          append_run(res.cycle_runs, fired[s], 1);
      }
      return res;
    }
    if (seen.size() >= state_cap) {
      res.verdict = HaltVerdict::UndecidedBudget;
      res.final_dist = std::move(cur);
      return res;
    }
    seen.emplace(cur, fired.size());
  }
}

std::optional<HaltingCertificate> make_halting_certificate(const Digraph& g, const Vec& x,
                                                           std::uint64_t state_cap) {
  if (!is_eulerian(g)) throw NotEulerian("halting certificates are defined on Eulerian digraphs");
  HaltingResult sim = decide_halting(g, x, state_cap);
  switch (sim.verdict) {
    case HaltVerdict::Terminating: return std::nullopt;
    case HaltVerdict::NonTerminating: return HaltingCertificate{*sim.repeated};
    default:
      throw StateBudgetExceeded("halting simulation exceeded the state budget");
  }
}

bool verify_halting_certificate(const Digraph& g, const Vec& x, const HaltingCertificate& cert,
                                std::uint64_t step_cap) {
  if (!is_eulerian(g)) throw NotEulerian("halting certificates are defined on Eulerian digraphs");
  if (cert.y.size() != x.size() || static_cast<int>(x.size()) != g.num_vertices()) return false;
  if (!is_nonneg(cert.y)) return false;
  if (!is_recurrent(g, cert.y, step_cap)) return false;
  return linear_equivalent(g, x, cert.y).has_value();
}

}  // namespace chipfire
