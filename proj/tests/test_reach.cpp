#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "chipfire/errors.hpp"
#include "chipfire/generate.hpp"
#include "chipfire/oracle.hpp"
#include "chipfire/reach.hpp"
#include "testutil.hpp"

using namespace chipfire;
using namespace chipfire::test;

TEST_CASE("ascending chain plan: structure") {
  Vec f = vec({3, 1, 0, 1});
  AscendingChainPlan plan = build_ascending_chain_plan(f);
  CHECK(plan.t == 3);
  REQUIRE(plan.sets.size() == 2);
  CHECK(plan.sets[0] == std::vector<int>{0});
  CHECK(plan.sets[1] == std::vector<int>{0, 1, 3});
  CHECK(plan.first_index == Vec{Int(1), Int(3)});
  CHECK(plan.end_index == 4);
}

TEST_CASE("ascending chain plan: level sets sum back to f") {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 50; ++iter) {
    int n = 1 + static_cast<int>(rng() % 6);
    Vec f(n);
    for (auto& e : f) e = static_cast<int>(rng() % 7);
    AscendingChainPlan plan = build_ascending_chain_plan(f);
    Vec total = zero_vec(n);
    for (std::size_t i = 0; i < plan.sets.size(); ++i) {
      Int a_next = (i + 1 < plan.sets.size()) ? plan.first_index[i + 1] : plan.end_index;
      Int reps = a_next - plan.first_index[i];
      CHECK(reps > 0);
      for (int v : plan.sets[i]) total[v] += reps;
      if (i + 1 < plan.sets.size()) {
        // strictly ascending
        CHECK(plan.sets[i].size() < plan.sets[i + 1].size());
        for (int v : plan.sets[i])
          CHECK(std::find(plan.sets[i + 1].begin(), plan.sets[i + 1].end(), v) !=
                plan.sets[i + 1].end());
      }
    }
    CHECK(total == f);
  }
}

TEST_CASE("plan distributions: closed form matches step-by-step set firing") {
  Digraph g = random_eulerian_digraph(4, 2, std::uint64_t{99});
  Vec x = vec({4, 3, 2, 1});
  Vec f = vec({3, 2, 0, 2});
  AscendingChainPlan plan = build_ascending_chain_plan(f);
  Mat lap = laplacian(g);
  // walk x_j forward one level at a time and compare
  Vec cur = x;
  for (Int j = 1; j <= plan.t; ++j) {
    CHECK(plan_distribution_at(g, x, plan, j) == cur);
    // add L * 1_{S_j}, where S_j is the distinct set active at level j
    for (std::size_t i = plan.sets.size(); i-- > 0;) {
      if (plan.first_index[i] <= j) {
        Vec ind = zero_vec(4);
        for (int v : plan.sets[i]) ind[v] = 1;
        Vec shift = mat_vec(lap, ind);
        for (int v = 0; v < 4; ++v) cur[v] += shift[v];
        break;
      }
    }
  }
  CHECK(plan_distribution_at(g, x, plan, plan.t + 1) == cur);
}

TEST_CASE("reach_eulerian: directed 2-cycle, repeated singleton set") {
  Digraph g = two_cycle();
  ReachResult r = reach_eulerian(g, vec({2, 0}), vec({0, 2}));
  CHECK(r.verdict == Verdict::Yes);
  REQUIRE(r.reduced_f.has_value());
  CHECK(*r.reduced_f == vec({2, 0}));
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->runs == std::vector<FiringRun>{{0, 2}});
  CHECK(replay(g, vec({2, 0}), r.witness->runs) == vec({0, 2}));
}

TEST_CASE("reach_eulerian: no nonnegative solution") {
  ReachResult r = reach_eulerian(doubled_two_cycle(), vec({1, 1}), vec({2, 0}));
  CHECK(r.verdict == Verdict::No);
  CHECK_FALSE(r.reduced_f.has_value());
  CHECK_FALSE(r.certificate.has_value());
}

TEST_CASE("reach_eulerian: identity and NotEulerian") {
  ReachResult r = reach_eulerian(triangle(), vec({2, 1, 0}), vec({2, 1, 0}));
  CHECK(r.verdict == Verdict::Yes);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->runs.empty());
  CHECK_THROWS_AS(reach_eulerian(weak6(), weak6_x(), weak6_y()), NotEulerian);
}

TEST_CASE("reach_eulerian: a nonnegative f is not sufficient") {
  // Exhaustively search small Eulerian instances for cases where the solve
  // succeeds but some level set cannot fire; each must agree with the oracle.
  int no_with_f = 0;
  for_each_connected_digraph(3, 4, [&](const Digraph& g) {
    if (!is_eulerian(g)) return;
    for (const Vec& x : all_distributions(3, 3))
      for (const Vec& y : all_distributions(3, 3)) {
        ReachResult r = reach_eulerian(g, x, y);
        if (r.verdict == Verdict::No && r.reduced_f) {
          ++no_with_f;
          CHECK_FALSE(reach_oracle_bfs_serial(g, x, y, 1'000'000));
        }
      }
  });
  CHECK(no_with_f > 0);  // the stalled branch is actually exercised
}

TEST_CASE("reach_eulerian: agrees with the BFS oracle on random instances") {
  std::mt19937_64 rng(61);
  for (int iter = 0; iter < 150; ++iter) {
    int n = 2 + static_cast<int>(rng() % 3);
    Digraph g = random_eulerian_digraph(n, 1 + static_cast<int>(rng() % 2), rng);
    Vec x = random_distribution(n, static_cast<int>(rng() % 6), rng);
    Vec y = random_distribution(n, static_cast<int>(rng() % 6), rng);
    ReachResult r = reach_eulerian(g, x, y);
    bool oracle = reach_oracle_bfs_serial(g, x, y, 2'000'000);
    CHECK((r.verdict == Verdict::Yes) == oracle);
    if (r.witness) CHECK(replay(g, x, r.witness->runs) == y);
  }
}

TEST_CASE("reach_eulerian: set-check count ignores chip magnitudes") {
  Digraph g = random_eulerian_digraph(6, 3, std::uint64_t{7});
  std::mt19937_64 rng(67);
  Vec x = random_distribution(6, 12, rng);
  Vec f = vec({4, 2, 2, 1, 0, 3});
  Vec lf = mat_vec(laplacian(g), f);
  Vec y(6);
  bool ok = true;
  for (int v = 0; v < 6; ++v) {
    y[v] = x[v] + lf[v];
    if (y[v] < 0) ok = false;
  }
  if (!ok) return;  // fixture only meaningful when y is a distribution
  Vec xs = x, ys = y;
  for (auto& e : xs) e *= 1000000;
  for (auto& e : ys) e *= 1000000;
  ReachStats base, scaled;
  ReachOptions opts;
  opts.want_witness = false;
  ReachResult r1 = reach_eulerian(g, x, y, opts, &base);
  ReachResult r2 = reach_eulerian(g, xs, ys, opts, &scaled);
  CHECK(r1.verdict == r2.verdict);
  CHECK(base.set_checks == scaled.set_checks);
  CHECK(base.game_firings == scaled.game_firings);
  CHECK(base.solve_ops == scaled.solve_ops);
}

TEST_CASE("is_recurrent: fixtures") {
  CHECK(is_recurrent(triangle(), vec({1, 0, 0})));
  CHECK_FALSE(is_recurrent(doubled_two_cycle(), vec({1, 1})));
  CHECK(is_recurrent(two_cycle(), vec({1, 0})));
  CHECK_THROWS_AS(is_recurrent(weak6(), weak6_y()), NotStronglyConnected);
}

TEST_CASE("is_recurrent: step budget is surfaced, not swallowed") {
  Digraph g = from_ints({{0, 1}, {2, 0}});  // period (2,1), three firings needed
  CHECK_THROWS_AS(is_recurrent(g, vec({5, 5}), 1), StepBudgetExceeded);
  CHECK(is_recurrent(g, vec({5, 5}), 3));
}

TEST_CASE("single-vertex graph: degenerate but consistent") {
  Digraph g = parse_digraph("1\n0");
  CHECK(is_eulerian(g));
  CHECK(primitive_period_vector(g, {0}) == vec({1}));
  // the lone vertex fires without moving anything, so every distribution is
  // recurrent and reachability collapses to equality
  CHECK(is_recurrent(g, vec({0})));
  ReachResult same = reach_decide(g, vec({3}), vec({3}));
  CHECK(same.verdict == Verdict::Yes);
  ReachResult diff = reach_decide(g, vec({3}), vec({2}));
  CHECK(diff.verdict == Verdict::No);
  CHECK(diff.method == Method::NoNonnegF);
}

TEST_CASE("is_recurrent: definition cross-check via the reachable state graph") {
  // recurrent iff some non-empty legal game returns to x: equivalently x is
  // reachable from one of its immediate successors
  std::mt19937_64 rng(71);
  for (int iter = 0; iter < 60; ++iter) {
    int n = 2 + static_cast<int>(rng() % 3);
    Digraph g = (iter % 2) ? random_eulerian_digraph(n, 1, rng)
                           : random_strongly_connected_non_eulerian(n, 1, rng);
    Vec x = random_distribution(n, static_cast<int>(rng() % 5), rng);
    bool brute = false;
    for (int v : legal_firings(g, x))
      if (reach_oracle_bfs_serial(g, fire(g, x, v), x, 1'000'000)) brute = true;
    CHECK(is_recurrent(g, x, 1'000'000) == brute);
  }
}

TEST_CASE("reach_recurrent_target: strongly connected Eulerian case") {
  Digraph g = triangle();
  auto r = reach_recurrent_target(g, vec({0, 1, 0}), vec({1, 0, 0}));
  REQUIRE(r.has_value());
  CHECK(r->verdict == Verdict::Yes);
  REQUIRE(r->witness.has_value());
  CHECK(r->witness->runs == std::vector<FiringRun>{{1, 1}, {2, 1}});
  CHECK(replay(g, vec({0, 1, 0}), r->witness->runs) == vec({1, 0, 0}));
}

TEST_CASE("reach_recurrent_target: fixture is not applicable") {
  // f is nonzero on the 4-cycle component but y there has no legal firing
  auto r = reach_recurrent_target(weak6(), weak6_x(), weak6_y());
  CHECK_FALSE(r.has_value());
}

TEST_CASE("reach_recurrent_target: identity and definitive NO") {
  auto r = reach_recurrent_target(weak6(), weak6_x(), weak6_x());
  REQUIRE(r.has_value());
  CHECK(r->verdict == Verdict::Yes);
  CHECK(r->witness->runs.empty());

  auto no = reach_recurrent_target(doubled_two_cycle(), vec({1, 1}), vec({2, 0}));
  REQUIRE(no.has_value());
  CHECK(no->verdict == Verdict::No);
}

TEST_CASE("reach_recurrent_target: YES whenever target is recurrent and equivalent") {
  std::mt19937_64 rng(73);
  int accepted = 0;
  for (int iter = 0; iter < 400 && accepted < 50; ++iter) {
    int n = 2 + static_cast<int>(rng() % 3);
    Digraph g = (iter % 2) ? random_eulerian_digraph(n, 1, rng)
                           : random_strongly_connected_non_eulerian(n, 1, rng);
    Vec y = random_distribution(n, n + static_cast<int>(rng() % 5), rng);
    if (!is_recurrent(g, y, 100000)) continue;
    // walk x away from y through the lattice while keeping it nonnegative
    Vec z(n);
    for (auto& e : z) e = static_cast<int>(rng() % 3);
    Vec lz = mat_vec(laplacian(g), z);
    Vec x(n);
    bool nonneg = true;
    for (int v = 0; v < n; ++v) {
      x[v] = y[v] + lz[v];
      if (x[v] < 0) nonneg = false;
    }
    if (!nonneg) continue;
    ++accepted;
    auto r = reach_recurrent_target(g, x, y);
    REQUIRE(r.has_value());
    CHECK(r->verdict == Verdict::Yes);
    REQUIRE(r->witness.has_value());
    CHECK(replay(g, x, r->witness->runs) == y);
    CHECK(reach_oracle_bfs_serial(g, x, y, 2'000'000));
  }
  CHECK(accepted == 50);
}

TEST_CASE("reach_greedy_general: fixture NO with certificate") {
  ReachResult r = reach_greedy_general(weak6(), weak6_x(), weak6_y());
  CHECK(r.verdict == Verdict::No);
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->f == vec({1, 1, 0, 0, 0, 0}));
  CHECK(r.certificate->g == zero_vec(6));
  CHECK(verify_nonreach_certificate(weak6(), weak6_x(), weak6_y(), *r.certificate));
}

TEST_CASE("reach_greedy_general: YES fixtures") {
  ReachResult r = reach_greedy_general(triangle(), vec({1, 0, 0}), vec({0, 0, 1}));
  CHECK(r.verdict == Verdict::Yes);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->runs == std::vector<FiringRun>{{0, 1}, {1, 1}});

  ReachResult id = reach_greedy_general(weak6(), weak6_y(), weak6_y());
  CHECK(id.verdict == Verdict::Yes);
  CHECK(id.witness->runs.empty());
}

TEST_CASE("reach_greedy_general: budget exhaustion is a verdict") {
  ReachOptions opts;
  opts.step_cap = 3;
  Digraph g = two_cycle();
  ReachResult r = reach_greedy_general(g, vec({10, 0}), vec({0, 10}), opts);
  CHECK(r.verdict == Verdict::UndecidedBudget);
}

TEST_CASE("verify_nonreach_certificate: fixture and tampered variants") {
  Digraph g = weak6();
  ReachCertificate good{vec({1, 1, 0, 0, 0, 0}), zero_vec(6)};
  CHECK(verify_nonreach_certificate(g, weak6_x(), weak6_y(), good));

  ReachCertificate g_equals_f{good.f, good.f};
  CHECK_FALSE(verify_nonreach_certificate(g, weak6_x(), weak6_y(), g_equals_f));

  // adding the sink period keeps x + Lf = y but breaks reducedness
  ReachCertificate dominating{vec({1, 1, 0, 0, 1, 1}), zero_vec(6)};
  CHECK_FALSE(verify_nonreach_certificate(g, weak6_x(), weak6_y(), dominating));

  ReachCertificate wrong_image{vec({1, 0, 0, 0, 0, 0}), zero_vec(6)};
  CHECK_FALSE(verify_nonreach_certificate(g, weak6_x(), weak6_y(), wrong_image));
}

TEST_CASE("reach_decide: methods and fixtures") {
  ReachResult a = reach_decide(weak6(), weak6_x(), weak6_y());
  CHECK(a.verdict == Verdict::No);
  CHECK(a.method == Method::GreedyGeneral);
  REQUIRE(a.certificate.has_value());
  CHECK(verify_nonreach_certificate(weak6(), weak6_x(), weak6_y(), *a.certificate));

  ReachResult b = reach_decide(doubled_two_cycle(), vec({1, 1}), vec({2, 0}));
  CHECK(b.verdict == Verdict::No);
  CHECK(b.method == Method::NoNonnegF);

  ReachResult c = reach_decide(triangle(), vec({1, 0, 0}), vec({0, 1, 0}));
  CHECK(c.verdict == Verdict::Yes);
  CHECK(c.method == Method::Eulerian);
  REQUIRE(c.witness.has_value());
  CHECK(c.witness->runs == std::vector<FiringRun>{{0, 1}});
}

TEST_CASE("reach_decide: eulerian NO carries a greedy certificate") {
  Digraph g = doubled_two_cycle();
  ReachResult r = reach_decide(g, vec({1, 3}), vec({3, 1}));
  if (r.verdict == Verdict::No && r.reduced_f) {
    REQUIRE(r.certificate.has_value());
    CHECK(verify_nonreach_certificate(g, vec({1, 3}), vec({3, 1}), *r.certificate));
  }
}

TEST_CASE("reach_decide: agrees with the oracle on random general instances") {
  std::mt19937_64 rng(79);
  for (int iter = 0; iter < 200; ++iter) {
    int n = 2 + static_cast<int>(rng() % 3);
    Digraph g = random_connected_digraph(n, 1 + static_cast<int>(rng() % 4), 2, rng);
    Vec x = random_distribution(n, static_cast<int>(rng() % 6), rng);
    Vec y = random_distribution(n, static_cast<int>(rng() % 6), rng);
    ReachResult r = reach_decide(g, x, y);
    if (r.verdict == Verdict::UndecidedBudget) continue;
    bool oracle = reach_oracle_bfs_serial(g, x, y, 2'000'000);
    CHECK((r.verdict == Verdict::Yes) == oracle);
    if (r.witness) CHECK(replay(g, x, r.witness->runs) == y);
    if (r.certificate) {
      CHECK(verify_nonreach_certificate(g, x, y, *r.certificate));
      CHECK_FALSE(oracle);
    }
  }
}
