#include "chipfire/game.hpp"

#include <random>

#include "chipfire/errors.hpp"

namespace chipfire {

std::vector<int> legal_firings(const Digraph& g, const Vec& x) {
  std::vector<int> out;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (x[v] >= g.out_degree(v)) out.push_back(v);
  return out;
}

Vec fire(const Digraph& g, const Vec& x, int v) {
  if (v < 0 || v >= g.num_vertices()) throw IllegalFiring("vertex out of range");
  if (x[v] < g.out_degree(v))
    throw IllegalFiring("vertex " + std::to_string(v + 1) + " holds fewer chips than its out-degree");
  Vec y = x;
  y[v] -= g.out_degree(v);
  for (int u = 0; u < g.num_vertices(); ++u) y[u] += g.multiplicity(v, u);
  return y;
}

void append_run(std::vector<FiringRun>& runs, int vertex, const Int& count) {
  if (count == 0) return;
  if (!runs.empty() && runs.back().vertex == vertex)
    runs.back().count += count;
  else
    runs.push_back({vertex, count});
}

namespace {

// Apply k consecutive firings of v. Legal iff x(v) >= k * d+(v): within the
// run only out-neighbors gain chips and v has no loop, so the last firing is
// the binding one.
void fire_batch(const Digraph& g, Vec& x, int v, const Int& k) {
  x[v] -= k * g.out_degree(v);
  for (int u = 0; u < g.num_vertices(); ++u)
    if (g.multiplicity(v, u) != 0) x[u] += k * g.multiplicity(v, u);
}

Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

GameTrace run_bounded_game(const Digraph& g, const Vec& x0, const Vec& bound,
                           std::uint64_t step_cap, TieBreak policy, std::uint64_t seed) {
  int n = g.num_vertices();
  if (static_cast<int>(x0.size()) != n || static_cast<int>(bound.size()) != n)
    throw ValidationError("vector size does not match the graph");
  if (!is_nonneg(x0)) throw ValidationError("chip distribution must be nonnegative");
  if (!is_nonneg(bound)) throw ValidationError("bound must be nonnegative");

  GameTrace trace;
  trace.initial = x0;
  trace.firing_vector = zero_vec(n);
  trace.total_firings = 0;
  Vec x = x0;

  std::mt19937_64 rng(seed);
  auto eligible = [&](int v) {
    return trace.firing_vector[v] < bound[v] && x[v] >= g.out_degree(v);
  };

  while (true) {
    int v = -1;
    if (policy == TieBreak::LowestIndex) {
      for (int c = 0; c < n; ++c)
        if (eligible(c)) {
          v = c;
          break;
        }
    } else if (policy == TieBreak::HighestIndex) {
      for (int c = n - 1; c >= 0; --c)
        if (eligible(c)) {
          v = c;
          break;
        }
    } else {
      std::vector<int> cands;
      for (int c = 0; c < n; ++c)
        if (eligible(c)) cands.push_back(c);
      if (!cands.empty())
        v = cands[std::uniform_int_distribution<std::size_t>(0, cands.size() - 1)(rng)];
    }
    if (v == -1) break;

    Int k = 1;
    if (policy == TieBreak::LowestIndex) {
      // Fire v as a run, but stop exactly when a lower-indexed vertex would
      // become eligible, so the trace is the plain greedy one.
      k = bound[v] - trace.firing_vector[v];
      if (g.out_degree(v) > 0) {
        Int cap = x[v] / g.out_degree(v);
        if (cap < k) k = cap;
      }
      for (int u = 0; u < v; ++u) {
        if (trace.firing_vector[u] >= bound[u]) continue;
        if (x[u] >= g.out_degree(u)) continue;  // cannot happen: u would have been picked
        if (g.multiplicity(v, u) == 0) continue;
        Int need = ceil_div(g.out_degree(u) - x[u], g.multiplicity(v, u));
        if (need < k) k = need;
      }
    }

    if (step_cap != kUnlimited) {
      Int remaining = Int(step_cap) - trace.total_firings;
      if (k > remaining)
        throw StepBudgetExceeded("bounded game needs more than " +
                                 std::to_string(step_cap) + " firings");
    }
    fire_batch(g, x, v, k);
    trace.firing_vector[v] += k;
    trace.total_firings += k;
    append_run(trace.runs, v, k);
  }
  trace.final_dist = std::move(x);
  return trace;
}

std::optional<Vec> replay(const Digraph& g, const Vec& initial,
                          const std::vector<FiringRun>& runs) {
  Vec x = initial;
  for (const FiringRun& run : runs) {
    if (run.vertex < 0 || run.vertex >= g.num_vertices()) return std::nullopt;
    if (run.count < 0) return std::nullopt;
    if (x[run.vertex] < run.count * g.out_degree(run.vertex)) return std::nullopt;
    fire_batch(g, x, run.vertex, run.count);
  }
  return x;
}

GameTrace delete_period_prefix(const Digraph& g, const GameTrace& trace, const Vec& p) {
  int n = g.num_vertices();
  if (static_cast<int>(p.size()) != n)
    throw ValidationError("period vector size does not match the graph");
  Vec to_drop = p;
  GameTrace out;
  out.initial = trace.initial;
  out.firing_vector = zero_vec(n);
  out.total_firings = 0;
  for (const FiringRun& run : trace.runs) {
    Int drop = to_drop[run.vertex] < run.count ? to_drop[run.vertex] : run.count;
    to_drop[run.vertex] -= drop;
    Int keep = run.count - drop;
    if (keep > 0) {
      append_run(out.runs, run.vertex, keep);
      out.firing_vector[run.vertex] += keep;
      out.total_firings += keep;
    }
  }
  auto final_dist = replay(g, out.initial, out.runs);
  if (!final_dist)
    throw ReplayFailure("trace is not legal after deleting the period prefix");
  out.final_dist = *final_dist;
  return out;
}

}  // namespace chipfire
