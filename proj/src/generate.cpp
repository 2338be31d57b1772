#include "chipfire/generate.hpp"

#include <algorithm>
#include <numeric>

#include "chipfire/errors.hpp"

namespace chipfire {

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) {  // inclusive
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace

Digraph random_connected_digraph(int n, int extra_edges, int max_multiplicity,
                                 std::mt19937_64& rng) {
  if (n < 1) throw ValidationError("need at least one vertex");
  Mat adj(n, Vec(n, Int(0)));
  for (int v = 1; v < n; ++v) {
    int u = pick(rng, 0, v - 1);
    if (pick(rng, 0, 1))
      adj[u][v] += 1;
    else
      adj[v][u] += 1;
  }
  for (int e = 0; e < extra_edges && n >= 2; ++e) {
    int u = pick(rng, 0, n - 1);
    int v = pick(rng, 0, n - 2);
    if (v >= u) ++v;
    if (adj[u][v] < max_multiplicity) adj[u][v] += 1;
  }
  return Digraph(std::move(adj));
}

Digraph random_eulerian_digraph(int n, int extra_walks, std::mt19937_64& rng) {
  if (n < 1) throw ValidationError("need at least one vertex");
  Mat adj(n, Vec(n, Int(0)));
  if (n >= 2) {
    std::vector<int> cycle(n);
    std::iota(cycle.begin(), cycle.end(), 0);
    std::shuffle(cycle.begin(), cycle.end(), rng);
    for (int i = 0; i < n; ++i) adj[cycle[i]][cycle[(i + 1) % n]] += 1;

    for (int w = 0; w < extra_walks; ++w) {
      int start = pick(rng, 0, n - 1);
      int cur = start;
      int steps = pick(rng, 1, 2 * n);
      for (int s = 0; s < steps; ++s) {
        int next = pick(rng, 0, n - 2);
        if (next >= cur) ++next;
        adj[cur][next] += 1;
        cur = next;
      }
      if (cur != start) {
        adj[cur][start] += 1;  // close the walk, keeping every vertex balanced
      }
    }
  }
  return Digraph(std::move(adj));
}

Digraph random_strongly_connected_non_eulerian(int n, int extra_walks, std::mt19937_64& rng) {
  if (n < 2) throw ValidationError("a non-Eulerian strongly connected digraph needs n >= 2");
  for (int attempt = 0; attempt < 64; ++attempt) {
    Digraph g = random_eulerian_digraph(n, extra_walks, rng);
    Mat adj = g.adjacency();
    // extra arcs keep strong connectivity but break the degree balance
    int extras = pick(rng, 1, n);
    for (int e = 0; e < extras; ++e) {
      int u = pick(rng, 0, n - 1);
      int v = pick(rng, 0, n - 2);
      if (v >= u) ++v;
      adj[u][v] += 1;
    }
    Digraph out(std::move(adj));
    if (!is_eulerian(out)) return out;
  }
  throw InternalContradiction("failed to generate a non-Eulerian strongly connected digraph");
}

Vec random_distribution(int n, int total_chips, std::mt19937_64& rng) {
  Vec x = zero_vec(n);
  for (int c = 0; c < total_chips; ++c) x[pick(rng, 0, n - 1)] += 1;
  return x;
}

Digraph random_connected_digraph(int n, int extra_edges, int max_multiplicity,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_connected_digraph(n, extra_edges, max_multiplicity, rng);
}

Digraph random_eulerian_digraph(int n, int extra_walks, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_eulerian_digraph(n, extra_walks, rng);
}

Vec random_distribution(int n, int total_chips, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_distribution(n, total_chips, rng);
}

void for_each_connected_digraph(int n, int max_total,
                                const std::function<void(const Digraph&)>& fn) {
  int cells = n * n - n;
  std::vector<int> entry(cells, 0);
  // positions of the off-diagonal cells in row-major order
  std::vector<std::pair<int, int>> pos;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) pos.emplace_back(u, v);

  auto emit = [&]() {
    Mat adj(n, Vec(n, Int(0)));
    for (int c = 0; c < cells; ++c) adj[pos[c].first][pos[c].second] = entry[c];
    try {
      fn(Digraph(std::move(adj)));
    } catch (const ValidationError&) {
      // disconnected; skip
    }
  };

  // enumerate all nonnegative integer vectors with sum <= max_total
  std::function<void(int, int)> rec = [&](int idx, int budget) {
    if (idx == cells) {
      emit();
      return;
    }
    for (int val = 0; val <= budget; ++val) {
      entry[idx] = val;
      rec(idx + 1, budget - val);
    }
    entry[idx] = 0;
  };
  if (n == 1) {
    fn(Digraph(Mat(1, Vec(1, Int(0)))));
    return;
  }
  rec(0, max_total);
}

std::vector<Vec> all_distributions(int n, int total) {
  std::vector<Vec> out;
  Vec cur = zero_vec(n);
  std::function<void(int, int)> rec = [&](int idx, int budget) {
    if (idx == n - 1) {
      cur[idx] = budget;
      out.push_back(cur);
      return;
    }
    for (int val = 0; val <= budget; ++val) {
      cur[idx] = val;
      rec(idx + 1, budget - val);
    }
  };
  rec(0, total);
  return out;
}

}  // namespace chipfire
