// chipfire: decide chip-firing reachability, recurrence and halting on
// directed multigraphs, with machine-checkable certificates and witnesses.

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "chipfire/digraph.hpp"
#include "chipfire/errors.hpp"
#include "chipfire/game.hpp"
#include "chipfire/generate.hpp"
#include "chipfire/halting.hpp"
#include "chipfire/linalg.hpp"
#include "chipfire/oracle.hpp"
#include "chipfire/reach.hpp"
#include "chipfire/serialize.hpp"

namespace {

using namespace chipfire;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

std::uint64_t default_budget() {
  if (const char* env = std::getenv("CHIPFIRE_DEFAULT_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    std::cerr << "warning: ignoring malformed CHIPFIRE_DEFAULT_BUDGET\n";
  }
  return kDefaultBudget;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << content;
}

Digraph load_graph(const std::string& path) { return parse_digraph(read_file(path)); }

// Distributions are accepted inline ("1 0 2") or as a file path.
Vec load_distribution(const std::string& arg, int n) {
  bool inline_tokens = !arg.empty();
  for (char c : arg)
    if (!std::isdigit(static_cast<unsigned char>(c)) && !std::isspace(static_cast<unsigned char>(c)) &&
        c != '-' && c != '+')
      inline_tokens = false;
  Vec v = parse_vector(inline_tokens ? arg : read_file(arg), n);
  for (const Int& e : v)
    if (e < 0) throw ValidationError("chip counts must be nonnegative");
  return v;
}

Json result_to_json(const ReachResult& r) {
  Json j;
  j["verdict"] = verdict_name(r.verdict);
  j["method"] = method_name(r.method);
  if (r.reduced_f) j["reduced_f"] = vec_to_json(*r.reduced_f);
  if (r.witness) j["witness"] = witness_to_json(*r.witness);
  if (r.certificate) j["certificate"] = certificate_to_json(*r.certificate);
  return j;
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Yes: return kExitYes;
    case Verdict::No: return kExitNo;
    default: return kExitBudget;
  }
}

struct ReachArgs {
  std::string graph, from, to, method = "auto", witness_path, cert_path;
  std::uint64_t step_cap = 0;
  std::uint64_t max_states = 0;
  bool json = false;
};

int run_reach(const ReachArgs& a) {
  Digraph g = load_graph(a.graph);
  Vec x = load_distribution(a.from, g.num_vertices());
  Vec y = load_distribution(a.to, g.num_vertices());
  ReachOptions opts;
  opts.step_cap = a.step_cap ? a.step_cap : default_budget();

  ReachResult r;
  bool not_applicable = false;
  if (a.method == "auto") {
    r = reach_decide(g, x, y, opts);
  } else if (a.method == "eulerian") {
    r = reach_eulerian(g, x, y, opts);
  } else if (a.method == "greedy") {
    r = reach_greedy_general(g, x, y, opts);
  } else if (a.method == "recurrent") {
    auto rec = reach_recurrent_target(g, x, y, opts);
    if (rec)
      r = *rec;
    else
      not_applicable = true;
  } else if (a.method == "oracle") {
    OracleOptions oopts;
    oopts.max_states = a.max_states ? a.max_states : default_budget();
    r.method = Method::OracleBfs;
    r.verdict = reach_oracle_bfs(g, x, y, oopts) ? Verdict::Yes : Verdict::No;
  } else {
    throw ValidationError("unknown method '" + a.method + "'");
  }

  if (not_applicable) {
    if (a.json) {
      Json j;
      j["verdict"] = "NOT_APPLICABLE";
      j["method"] = method_name(Method::RecurrentTarget);
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "verdict: NOT_APPLICABLE (target not recurrent on some fired component)\n";
    }
    return kExitBudget;
  }

  if (!a.witness_path.empty() && r.witness)
    write_file(a.witness_path, witness_to_json(*r.witness).dump() + "\n");
  if (!a.cert_path.empty() && r.certificate)
    write_file(a.cert_path, certificate_to_json(*r.certificate).dump() + "\n");

  if (a.json) {
    std::cout << result_to_json(r).dump() << "\n";
  } else {
    std::cout << "verdict: " << verdict_name(r.verdict) << "\n";
    std::cout << "method: " << method_name(r.method) << "\n";
    if (r.reduced_f) std::cout << "reduced f: " << write_vector(*r.reduced_f) << "\n";
    if (r.verdict == Verdict::Yes && r.witness)
      std::cout << "witness: " << format_runs(r.witness->runs)
                << (a.witness_path.empty() ? "" : " (written to " + a.witness_path + ")") << "\n";
    if (r.verdict == Verdict::Yes && !r.witness)
      std::cout << "witness: omitted (too long to materialize)\n";
    if (r.verdict == Verdict::No) {
      if (r.certificate)
        std::cout << "certificate: f=" << write_vector(r.certificate->f)
                  << " g=" << write_vector(r.certificate->g)
                  << (a.cert_path.empty() ? "" : " (written to " + a.cert_path + ")") << "\n";
      else if (!r.reduced_f && r.method != Method::OracleBfs)
        std::cout << "certificate: no nonnegative integer f solves y = x + Lf\n";
    }
  }
  return verdict_exit(r.verdict);
}

int run_recurrent(const std::string& graph, const std::string& dist, std::uint64_t step_cap,
                  bool json) {
  Digraph g = load_graph(graph);
  Vec x = load_distribution(dist, g.num_vertices());
  bool rec = is_recurrent(g, x, step_cap ? step_cap : default_budget());
  if (json)
    std::cout << Json{{"recurrent", rec}}.dump() << "\n";
  else
    std::cout << (rec ? "recurrent" : "not recurrent") << "\n";
  return rec ? kExitYes : kExitNo;
}

int run_halt(const std::string& graph, const std::string& dist, const std::string& cert_path,
             std::uint64_t state_cap, bool json) {
  Digraph g = load_graph(graph);
  Vec x = load_distribution(dist, g.num_vertices());
  std::uint64_t cap = state_cap ? state_cap : default_budget();
  HaltingResult r = decide_halting(g, x, cap);

  if (!cert_path.empty()) {
    if (!is_eulerian(g))
      throw NotEulerian("halting certificates require an Eulerian graph");
    auto cert = make_halting_certificate(g, x, cap);
    if (cert) write_file(cert_path, halting_certificate_to_json(*cert).dump() + "\n");
  }

  if (json) {
    Json j;
    j["verdict"] = halt_verdict_name(r.verdict);
    if (r.verdict == HaltVerdict::Terminating) {
      j["final"] = vec_to_json(r.final_dist);
      j["firing_vector"] = vec_to_json(r.firing_vector);
    }
    if (r.repeated) j["repeated"] = vec_to_json(*r.repeated);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "verdict: " << halt_verdict_name(r.verdict) << "\n";
    if (r.verdict == HaltVerdict::Terminating)
      std::cout << "final: " << write_vector(r.final_dist)
                << "\nfiring vector: " << write_vector(r.firing_vector) << "\n";
    if (r.repeated) std::cout << "repeated distribution: " << write_vector(*r.repeated) << "\n";
  }
  switch (r.verdict) {
    case HaltVerdict::Terminating: return kExitYes;
    case HaltVerdict::NonTerminating: return kExitNo;
    default: return kExitBudget;
  }
}

int run_verify_cert(const std::string& graph, const std::string& from, const std::string& to,
                    const std::string& cert_path, bool json) {
  Digraph g = load_graph(graph);
  Vec x = load_distribution(from, g.num_vertices());
  Vec y = load_distribution(to, g.num_vertices());
  ReachCertificate cert = certificate_from_json(Json::parse(read_file(cert_path)));
  bool ok = verify_nonreach_certificate(g, x, y, cert);
  if (json)
    std::cout << Json{{"valid", ok}}.dump() << "\n";
  else
    std::cout << (ok ? "certificate verifies: x cannot reach y" : "certificate REJECTED") << "\n";
  return ok ? kExitYes : kExitNo;
}

int run_verify_halt_cert(const std::string& graph, const std::string& dist,
                         const std::string& cert_path, bool json) {
  Digraph g = load_graph(graph);
  Vec x = load_distribution(dist, g.num_vertices());
  HaltingCertificate cert = halting_certificate_from_json(Json::parse(read_file(cert_path)));
  bool ok = verify_halting_certificate(g, x, cert, default_budget());
  if (json)
    std::cout << Json{{"valid", ok}}.dump() << "\n";
  else
    std::cout << (ok ? "certificate verifies: x is non-terminating" : "certificate REJECTED")
              << "\n";
  return ok ? kExitYes : kExitNo;
}

int run_period(const std::string& graph, bool json) {
  Digraph g = load_graph(graph);
  SccDecomposition scc = scc_decompose(g);
  Json comps = Json::array();
  for (std::size_t c = 0; c < scc.components.size(); ++c) {
    Vec p = primitive_period_vector(g, scc.components[c]);
    if (json) {
      Json jc;
      Json verts = Json::array();
      for (int v : scc.components[c]) verts.push_back(v + 1);
      jc["vertices"] = verts;
      jc["sink"] = static_cast<bool>(scc.is_sink[c]);
      jc["period"] = vec_to_json(p);
      comps.push_back(jc);
    } else {
      std::cout << "component " << c + 1 << (scc.is_sink[c] ? " (sink)" : "") << ": vertices";
      for (int v : scc.components[c]) std::cout << " v" << v + 1;
      std::cout << "\n  primitive period: " << write_vector(p) << "\n";
    }
  }
  Int per = period_sum(g);
  if (json) {
    std::cout << Json{{"components", comps}, {"per", int_to_json(per)}}.dump() << "\n";
  } else {
    std::cout << "per(G) = " << per.get_str() << "\n";
  }
  return kExitYes;
}

int run_oracle(const std::string& graph, const std::string& from, const std::string& to,
               std::uint64_t max_states, bool serial, bool json) {
  Digraph g = load_graph(graph);
  Vec x = load_distribution(from, g.num_vertices());
  Vec y = load_distribution(to, g.num_vertices());
  OracleOptions opts;
  opts.max_states = max_states ? max_states : default_budget();
  opts.parallel = !serial;
  bool reach = reach_oracle_bfs(g, x, y, opts);
  if (json)
    std::cout << Json{{"reachable", reach}}.dump() << "\n";
  else
    std::cout << (reach ? "reachable" : "not reachable") << "\n";
  return reach ? kExitYes : kExitNo;
}

int run_gen(const std::string& kind, int n, int edges, int chips, std::uint64_t seed,
            const std::string& out) {
  std::mt19937_64 rng(seed);
  Digraph g = (kind == "eulerian") ? random_eulerian_digraph(n, edges, rng)
                                   : random_connected_digraph(n, edges, 3, rng);
  std::ostringstream text;
  text << "# kind=" << kind << " n=" << n << " edges=" << edges << " seed=" << seed << "\n"
       << write_digraph(g);
  if (out.empty() || out == "-")
    std::cout << text.str();
  else
    write_file(out, text.str());
  if (chips >= 0) {
    Vec x = random_distribution(n, chips, rng);
    std::cout << write_vector(x) << "\n";
  }
  return kExitYes;
}

int run_selftest(int n, int chips, std::uint64_t seed, int count, std::uint64_t budget) {
  std::uint64_t cap = budget ? budget : default_budget();
  int disagreements = 0, undecided = 0, yes_count = 0, no_count = 0;
  std::vector<std::string> reports;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : disagreements, undecided, yes_count, no_count)
#endif
  for (int i = 0; i < count; ++i) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(i));
    int nv = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::max(1, n - 1)));
    Digraph g = (i % 3 == 0) ? random_eulerian_digraph(nv, 2, rng)
                             : random_connected_digraph(nv, 2 * nv, 3, rng);
    Vec x = random_distribution(nv, 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(chips)), rng);
    Vec y = (rng() % 2) ? random_distribution(nv, static_cast<int>(vec_sum(x).get_ui()), rng)
                        : random_distribution(nv, 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(chips)), rng);
    ReachOptions opts;
    opts.step_cap = cap;
    opts.want_witness = true;

    ReachResult r = reach_decide(g, x, y, opts);
    bool oracle_ok = true, oracle_reach = false;
    try {
      oracle_reach = reach_oracle_bfs_serial(g, x, y, cap);
    } catch (const StateBudgetExceeded&) {
      oracle_ok = false;
    }
    if (r.verdict == Verdict::UndecidedBudget || !oracle_ok) {
      ++undecided;
      continue;
    }
    bool decider_reach = (r.verdict == Verdict::Yes);
    if (decider_reach) ++yes_count;
    else ++no_count;
    bool bad = decider_reach != oracle_reach;
    if (!bad && r.witness && replay(g, x, r.witness->runs) != y) bad = true;
    if (!bad && r.certificate && !verify_nonreach_certificate(g, x, y, *r.certificate)) bad = true;
    if (bad) {
      ++disagreements;
#ifdef _OPENMP
#pragma omp critical
#endif
      reports.push_back("instance " + std::to_string(i) + ": decider=" +
                        verdict_name(r.verdict) + " oracle=" + (oracle_reach ? "YES" : "NO"));
    }
  }

  std::sort(reports.begin(), reports.end());
  for (const auto& line : reports) std::cerr << line << "\n";
  std::cout << "selftest: " << count << " instances, " << yes_count << " reachable, " << no_count
            << " unreachable, " << undecided << " skipped (budget), " << disagreements
            << " disagreements\n";
  return disagreements == 0 ? kExitYes : kExitNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chip-firing reachability, recurrence and halting on directed multigraphs"};
  app.require_subcommand(1);

  ReachArgs ra;
  auto* reach = app.add_subcommand("reach", "decide whether y is reachable from x");
  reach->add_option("--graph", ra.graph, "graph file")->required();
  reach->add_option("--from", ra.from, "start distribution (inline or file)")->required();
  reach->add_option("--to", ra.to, "target distribution (inline or file)")->required();
  reach->add_option("--method", ra.method, "auto|eulerian|recurrent|greedy|oracle");
  reach->add_option("--witness", ra.witness_path, "write a YES witness (JSON) here");
  reach->add_option("--cert", ra.cert_path, "write a NO certificate (JSON) here");
  reach->add_option("--step-cap", ra.step_cap, "firing budget for bounded games");
  reach->add_option("--max-states", ra.max_states, "state budget for --method oracle");
  reach->add_flag("--json", ra.json, "machine-readable output");

  std::string graph, dist, from, to, cert_path, kind = "general", out;
  std::uint64_t step_cap = 0, state_cap = 0, max_states = 0, seed = 1;
  int gen_n = 4, gen_edges = 4, gen_chips = -1, st_n = 4, st_chips = 5, st_count = 1000;
  bool json = false, serial = false;

  auto* rec = app.add_subcommand("recurrent", "is the distribution recurrent?");
  rec->add_option("--graph", graph, "graph file (strongly connected)")->required();
  rec->add_option("--dist", dist, "distribution (inline or file)")->required();
  rec->add_option("--step-cap", step_cap, "firing budget");
  rec->add_flag("--json", json, "machine-readable output");

  auto* halt = app.add_subcommand("halt", "does every legal game from x terminate?");
  halt->add_option("--graph", graph, "graph file")->required();
  halt->add_option("--dist", dist, "distribution (inline or file)")->required();
  halt->add_option("--cert", cert_path, "write a non-termination certificate (Eulerian only)");
  halt->add_option("--state-cap", state_cap, "distinct-state budget");
  halt->add_flag("--json", json, "machine-readable output");

  auto* vc = app.add_subcommand("verify-cert", "check a non-reachability certificate");
  vc->add_option("--graph", graph, "graph file")->required();
  vc->add_option("--from", from, "start distribution")->required();
  vc->add_option("--to", to, "target distribution")->required();
  vc->add_option("--cert", cert_path, "certificate JSON file")->required();
  vc->add_flag("--json", json, "machine-readable output");

  auto* vhc = app.add_subcommand("verify-halt-cert", "check a non-termination certificate");
  vhc->add_option("--graph", graph, "graph file")->required();
  vhc->add_option("--dist", dist, "distribution")->required();
  vhc->add_option("--cert", cert_path, "certificate JSON file")->required();
  vhc->add_flag("--json", json, "machine-readable output");

  auto* period = app.add_subcommand("period", "primitive period vectors per component");
  period->add_option("--graph", graph, "graph file")->required();
  period->add_flag("--json", json, "machine-readable output");

  auto* oracle = app.add_subcommand("oracle", "brute-force reachability over the state graph");
  oracle->add_option("--graph", graph, "graph file")->required();
  oracle->add_option("--from", from, "start distribution")->required();
  oracle->add_option("--to", to, "target distribution")->required();
  oracle->add_option("--max-states", max_states, "state budget");
  oracle->add_flag("--serial", serial, "disable the parallel frontier expansion");
  oracle->add_flag("--json", json, "machine-readable output");

  auto* gen = app.add_subcommand("gen", "generate random instances");
  gen->add_option("--kind", kind, "eulerian|general");
  gen->add_option("--n", gen_n, "vertex count");
  gen->add_option("--edges", gen_edges, "extra edges / closed walks");
  gen->add_option("--chips", gen_chips, "also print a distribution with this many chips");
  gen->add_option("--seed", seed, "RNG seed");
  gen->add_option("--out", out, "graph output file ('-' for stdout)");

  auto* st = app.add_subcommand("selftest", "random cross-check of the deciders vs the oracle");
  st->add_option("--n", st_n, "max vertex count");
  st->add_option("--chips", st_chips, "max chip total");
  st->add_option("--seed", seed, "RNG seed");
  st->add_option("--count", st_count, "number of instances");
  st->add_option("--step-cap", step_cap, "budget for games and oracle");

  try {
    app.parse(argc, argv);
    if (app.got_subcommand(reach)) return run_reach(ra);
    if (app.got_subcommand(rec)) return run_recurrent(graph, dist, step_cap, json);
    if (app.got_subcommand(halt)) return run_halt(graph, dist, cert_path, state_cap, json);
    if (app.got_subcommand(vc)) return run_verify_cert(graph, from, to, cert_path, json);
    if (app.got_subcommand(vhc)) return run_verify_halt_cert(graph, dist, cert_path, json);
    if (app.got_subcommand(period)) return run_period(graph, json);
    if (app.got_subcommand(oracle)) return run_oracle(graph, from, to, max_states, serial, json);
    if (app.got_subcommand(gen)) return run_gen(kind, gen_n, gen_edges, gen_chips, seed, out);
    if (app.got_subcommand(st)) return run_selftest(st_n, st_chips, seed, st_count, step_cap);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;  // --help exits cleanly
  } catch (const StepBudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const StateBudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
