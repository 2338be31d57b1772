#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "chipfire/errors.hpp"
#include "chipfire/generate.hpp"
#include "chipfire/oracle.hpp"
#include "testutil.hpp"

using namespace chipfire;
using namespace chipfire::test;

TEST_CASE("oracle: triangle reachable set") {
  Digraph g = triangle();
  auto states = enumerate_reachable(g, vec({1, 0, 0}));
  std::vector<Vec> expected{vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})};
  std::sort(states.begin(), states.end());
  std::sort(expected.begin(), expected.end());
  CHECK(states == expected);
  CHECK(reach_oracle_bfs_serial(g, vec({1, 0, 0}), vec({0, 0, 1})));
}

TEST_CASE("oracle: 6-vertex fixture is unreachable") {
  CHECK_FALSE(reach_oracle_bfs_serial(weak6(), weak6_x(), weak6_y()));
  OracleOptions par;
  CHECK_FALSE(reach_oracle_bfs(weak6(), weak6_x(), weak6_y(), par));
}

TEST_CASE("oracle: chip conservation pre-filter and reflexivity") {
  Digraph g = triangle();
  CHECK_FALSE(reach_oracle_bfs_serial(g, vec({1, 0, 0}), vec({1, 1, 0})));
  CHECK(reach_oracle_bfs_serial(g, vec({2, 1, 0}), vec({2, 1, 0})));
}

TEST_CASE("oracle: state budget") {
  // a 3-cycle with many chips has a large reachable set
  Digraph g = triangle();
  Vec x = vec({30, 20, 10});
  Vec y = vec({10, 20, 30});
  CHECK_THROWS_AS(reach_oracle_bfs_serial(g, x, y, 5), StateBudgetExceeded);
  OracleOptions opts;
  opts.max_states = 5;
  CHECK_THROWS_AS(reach_oracle_bfs(g, x, y, opts), StateBudgetExceeded);
}

TEST_CASE("oracle: parallel expansion matches the serial reference") {
  std::mt19937_64 rng(83);
  OracleOptions par;
  for (int iter = 0; iter < 120; ++iter) {
    int n = 2 + static_cast<int>(rng() % 4);
    Digraph g = (iter % 2) ? random_eulerian_digraph(n, 2, rng)
                           : random_connected_digraph(n, 4, 2, rng);
    Vec x = random_distribution(n, static_cast<int>(rng() % 7), rng);
    Vec y = random_distribution(n, static_cast<int>(rng() % 7), rng);
    CHECK(reach_oracle_bfs(g, x, y, par) == reach_oracle_bfs_serial(g, x, y));
  }
}

TEST_CASE("oracle: every enumerated state is reachable and closed under firing") {
  std::mt19937_64 rng(89);
  for (int iter = 0; iter < 30; ++iter) {
    int n = 2 + static_cast<int>(rng() % 3);
    Digraph g = random_connected_digraph(n, 3, 2, rng);
    Vec x = random_distribution(n, 4, rng);
    auto states = enumerate_reachable(g, x, 100000);
    CHECK(states.front() == x);
    std::vector<Vec> sorted = states;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());  // distinct
    for (const Vec& s : states)
      for (int v : legal_firings(g, s))
        CHECK(std::binary_search(sorted.begin(), sorted.end(), fire(g, s, v)));
  }
}
