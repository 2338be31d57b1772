#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "chipfire/serialize.hpp"
#include "testutil.hpp"

using namespace chipfire;
using namespace chipfire::test;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args, bool raw = false) {
  std::string cmd = (raw ? args : std::string(CHIPFIRE_BIN) + " " + args) + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, got);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

fs::path temp_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("chipfire_cli_test_" + std::to_string(getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_temp(const std::string& name, const std::string& content) {
  fs::path p = temp_dir() / name;
  std::ofstream(p) << content;
  return p.string();
}

std::string weak6_file() {
  static std::string path = write_temp("weak6.cf", write_digraph(weak6()));
  return path;
}

std::string triangle_file() {
  static std::string path = write_temp("triangle.cf", "3\n0 1 0\n0 0 1\n1 0 0\n");
  return path;
}

}  // namespace

TEST_CASE("cli: reach on the 6-vertex fixture is NO with a verifying certificate") {
  std::string cert = (temp_dir() / "c.json").string();
  RunResult r = run("reach --graph " + weak6_file() + " --from '1 1 0 0 1 0' --to '0 0 1 1 1 0' --cert " +
                    cert);
  CHECK(r.code == 1);
  CHECK(r.out.find("NO") != std::string::npos);
  CHECK(r.out.find("greedy_general") != std::string::npos);

  RunResult v = run("verify-cert --graph " + weak6_file() +
                    " --from '1 1 0 0 1 0' --to '0 0 1 1 1 0' --cert " + cert);
  CHECK(v.code == 0);
}

TEST_CASE("cli: tampered certificate is rejected") {
  std::string cert = write_temp("bad.json", R"({"type":"nonreach","f":[1,1,0,0,1,1],"g":[0,0,0,0,0,0]})");
  RunResult v = run("verify-cert --graph " + weak6_file() +
                    " --from '1 1 0 0 1 0' --to '0 0 1 1 1 0' --cert " + cert);
  CHECK(v.code == 1);
}

TEST_CASE("cli: identity reach is YES with an empty witness") {
  RunResult r = run("reach --graph " + triangle_file() + " --from '1 0 0' --to '1 0 0'");
  CHECK(r.code == 0);
  CHECK(r.out.find("YES") != std::string::npos);
  CHECK(r.out.find("(empty)") != std::string::npos);
}

TEST_CASE("cli: witness file replays") {
  std::string wpath = (temp_dir() / "w.json").string();
  RunResult r = run("reach --graph " + triangle_file() + " --from '1 0 0' --to '0 0 1' --witness " +
                    wpath);
  CHECK(r.code == 0);
  std::ifstream in(wpath);
  REQUIRE(in.good());
  Json j = Json::parse(in);
  auto runs = witness_runs_from_json(j);
  CHECK(replay(triangle(), vec({1, 0, 0}), runs) == vec({0, 0, 1}));
}

TEST_CASE("cli: method selection and oracle") {
  RunResult eul = run("reach --graph " + triangle_file() + " --from '1 0 0' --to '0 1 0' --method eulerian");
  CHECK(eul.code == 0);
  RunResult bad = run("reach --graph " + weak6_file() +
                      " --from '1 1 0 0 1 0' --to '0 0 1 1 1 0' --method eulerian");
  CHECK(bad.code == 2);  // not Eulerian
  RunResult orc = run("oracle --graph " + weak6_file() + " --from '1 1 0 0 1 0' --to '0 0 1 1 1 0'");
  CHECK(orc.code == 1);
  RunResult rec = run("reach --graph " + weak6_file() +
                      " --from '1 1 0 0 1 0' --to '0 0 1 1 1 0' --method recurrent");
  CHECK(rec.code == 3);  // theorem not applicable
}

TEST_CASE("cli: recurrent subcommand") {
  CHECK(run("recurrent --graph " + triangle_file() + " --dist '1 0 0'").code == 0);
  CHECK(run("recurrent --graph " + triangle_file() + " --dist '0 0 0'").code == 1);
}

TEST_CASE("cli: halt with certificate round-trip") {
  std::string cert = (temp_dir() / "halt.json").string();
  RunResult r = run("halt --graph " + triangle_file() + " --dist '1 0 0' --cert " + cert);
  CHECK(r.code == 1);  // non-terminating
  RunResult v = run("verify-halt-cert --graph " + triangle_file() + " --dist '1 0 0' --cert " + cert);
  CHECK(v.code == 0);

  RunResult t = run("halt --graph " + triangle_file() + " --dist '0 0 0'");
  CHECK(t.code == 0);  // terminating
}

TEST_CASE("cli: period") {
  RunResult r = run("period --graph " + weak6_file() + " --json");
  CHECK(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["per"] == 6);
  REQUIRE(j["components"].size() == 2);
  CHECK(j["components"][1]["sink"] == true);
  CHECK(vec_from_json(j["components"][1]["period"]) == vec({0, 0, 0, 0, 1, 1}));
}

TEST_CASE("cli: gen output parses and respects the kind") {
  std::string gpath = (temp_dir() / "gen.cf").string();
  RunResult r = run("gen --kind eulerian --n 5 --edges 3 --seed 11 --out " + gpath);
  CHECK(r.code == 0);
  std::ifstream in(gpath);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Digraph g = parse_digraph(text);
  CHECK(g.num_vertices() == 5);
  CHECK(is_eulerian(g));
}

TEST_CASE("cli: deterministic JSON output") {
  std::string cmd = "reach --graph " + weak6_file() + " --from '1 1 0 0 1 0' --to '0 0 1 1 1 0' --json";
  RunResult a = run(cmd);
  RunResult b = run(cmd);
  CHECK(a.code == 1);
  CHECK(a.out == b.out);
  Json j = Json::parse(a.out);
  CHECK(j["verdict"] == "NO");
  CHECK(j["method"] == "greedy_general");
  CHECK(vec_from_json(j["reduced_f"]) == vec({1, 1, 0, 0, 0, 0}));
  CHECK(vec_from_json(j["certificate"]["f"]) == vec({1, 1, 0, 0, 0, 0}));
  CHECK(vec_from_json(j["certificate"]["g"]) == zero_vec(6));
}

TEST_CASE("cli: selftest at small scale") {
  RunResult r = run("selftest --n 3 --chips 4 --seed 5 --count 150");
  CHECK(r.code == 0);
  CHECK(r.out.find("0 disagreements") != std::string::npos);
}

TEST_CASE("cli: budget exit code") {
  RunResult r = run("reach --graph " + triangle_file() +
                    " --from '40 0 0' --to '0 40 0' --method greedy --step-cap 5");
  CHECK(r.code == 3);
  CHECK(r.out.find("UNDECIDED_BUDGET") != std::string::npos);
  // the Eulerian decider handles the same instance within any budget
  RunResult e = run("reach --graph " + triangle_file() + " --from '40 0 0' --to '0 40 0' --step-cap 5");
  CHECK(e.code == 0);
}

TEST_CASE("cli: distributions from files") {
  std::string xf = write_temp("x.dist", "# start\n1 1 0 0 1 0\n");
  std::string yf = write_temp("y.dist", "0 0 1 1 1 0\n");
  RunResult r = run("reach --graph " + weak6_file() + " --from " + xf + " --to " + yf);
  CHECK(r.code == 1);
  CHECK(r.out.find("greedy_general") != std::string::npos);
}

TEST_CASE("cli: gen is deterministic for a fixed seed") {
  RunResult a = run("gen --kind general --n 4 --edges 5 --seed 42 --out - --chips 6");
  RunResult b = run("gen --kind general --n 4 --edges 5 --seed 42 --out - --chips 6");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  RunResult c = run("gen --kind general --n 4 --edges 5 --seed 43 --out - --chips 6");
  CHECK(a.out != c.out);
}

TEST_CASE("cli: CHIPFIRE_DEFAULT_BUDGET is honored") {
  std::string cmd = "reach --graph " + triangle_file() +
                    " --from '40 0 0' --to '0 40 0' --method greedy";
  RunResult tight = run("env CHIPFIRE_DEFAULT_BUDGET=5 " + std::string(CHIPFIRE_BIN) + " " + cmd,
                        true);
  CHECK(tight.code == 3);
  RunResult roomy = run(cmd);
  CHECK(roomy.code == 0);
}

TEST_CASE("cli: usage errors") {
  CHECK(run("reach --graph /nonexistent.cf --from '1' --to '1'").code == 2);
  CHECK(run("nonsense").code == 2);
  CHECK(run("reach --graph " + triangle_file() + " --from '1 0' --to '1 0 0'").code == 2);
}
