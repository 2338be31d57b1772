// Benchmark: serial vs OpenMP-parallel BFS oracle, and the instance-sweep
// throughput used by the acceptance battery. Wall-clock only, no assertions.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "chipfire/generate.hpp"
#include "chipfire/oracle.hpp"
#include "chipfire/reach.hpp"

using namespace chipfire;
using Clock = std::chrono::steady_clock;

namespace {

double time_of(const std::function<void()>& fn) {
  auto t0 = Clock::now();
  fn();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int max_chips = argc > 1 ? std::atoi(argv[1]) : 40;
#ifdef _OPENMP
  std::printf("OpenMP: %d threads\n", omp_get_max_threads());
#else
  std::printf("OpenMP: disabled (serial build)\n");
#endif

  // Directed 5-cycle: every distribution with the same chip total is
  // reachable, so the state space is the full composition space and piling
  // all chips on one vertex is found only after most of it is explored.
  Mat cyc(5, Vec(5, Int(0)));
  for (int i = 0; i < 5; ++i) cyc[i][(i + 1) % 5] = 1;
  Digraph g(std::move(cyc));
  std::printf("\nBFS oracle, directed 5-cycle, growing chip count\n");
  std::printf("%8s %12s %14s %12s %12s %9s\n", "chips", "states", "reference[s]", "fast-1t[s]",
              "fast-par[s]", "speedup");
  for (int chips = max_chips / 2; chips <= max_chips; chips += max_chips / 4) {
    Vec x = random_distribution(5, chips, std::uint64_t{7});
    Vec y = zero_vec(5);
    y[0] = vec_sum(x);

    bool r1 = false, r2 = false, r3 = false;
    double tref = time_of([&] { r1 = reach_oracle_bfs_serial(g, x, y, 50'000'000); });
    OracleOptions ser;
    ser.max_states = 50'000'000;
    ser.parallel = false;
    double ts = time_of([&] { r2 = reach_oracle_bfs(g, x, y, ser); });
    OracleOptions par;
    par.max_states = 50'000'000;
    double tp = time_of([&] { r3 = reach_oracle_bfs(g, x, y, par); });
    if (r1 != r2 || r1 != r3) {
      std::printf("DISAGREEMENT at chips=%d\n", chips);
      return 1;
    }
    std::size_t states = enumerate_reachable(g, x, 50'000'000).size();
    std::printf("%8d %12zu %14.4f %12.4f %12.4f %8.2fx\n", chips, states, tref, ts, tp, ts / tp);
  }

  // throughput of the exhaustive Eulerian sweep kernel
  std::printf("\nEulerian sweep kernel (n=4, total multiplicity <= 5, chips <= 4)\n");
  std::vector<Digraph> graphs;
  for (int n = 2; n <= 4; ++n)
    for_each_connected_digraph(n, 5, [&](const Digraph& gg) {
      if (is_eulerian(gg)) graphs.push_back(gg);
    });
  auto sweep = [&](bool parallel) {
    long long yes = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : yes) if (parallel)
#endif
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
      ReachOptions opts;
      opts.want_witness = false;
      std::vector<Vec> dists;
      for (int total = 0; total <= 4; ++total)
        for (Vec& d : all_distributions(graphs[gi].num_vertices(), total))
          dists.push_back(std::move(d));
      for (const Vec& x : dists)
        for (const Vec& y : dists)
          if (reach_eulerian(graphs[gi], x, y, opts).verdict == Verdict::Yes) ++yes;
    }
    return yes;
  };
  long long y1 = 0, y2 = 0;
  double ts = time_of([&] { y1 = sweep(false); });
  double tp = time_of([&] { y2 = sweep(true); });
  std::printf("%zu graphs: serial %.3f s, parallel %.3f s (%.2fx), %lld==%lld reachable\n",
              graphs.size(), ts, tp, ts / tp, y1, y2);
  return 0;
}
