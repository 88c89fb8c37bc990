#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string bin() {
  const char* b = std::getenv("DENSESTREAM_BIN");
  REQUIRE(b != nullptr);
  return b;
}

struct CmdResult {
  int exit_code;
  std::string output;
};

CmdResult run_cmd(const std::string& args) {
  std::string out_path = "cli_test_out.tmp";
  std::string cmd = bin() + " " + args + " > " + out_path + " 2>/dev/null";
  int rc = std::system(cmd.c_str());
  std::ifstream f(out_path);
  std::stringstream ss;
  ss << f.rdbuf();
  return {WEXITSTATUS(rc), ss.str()};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  f << content;
}

int count_lines(const std::string& s) {
  int lines = 0;
  for (char c : s)
    if (c == '\n') ++lines;
  return lines;
}

std::string json_field(const std::string& line, const std::string& key) {
  auto pos = line.find("\"" + key + "\":");
  REQUIRE(pos != std::string::npos);
  pos += key.size() + 3;
  auto end = line.find_first_of(",}", pos);
  return line.substr(pos, end - pos);
}

}  // namespace

TEST_CASE("run emits one record per checkpoint") {
  write_file("cli_small.stream", "# n=4\n+ 0 1\n+ 1 2\n+ 2 3\n?\n");
  auto res = run_cmd("run --mode full cli_small.stream");
  CHECK(res.exit_code == 0);
  CHECK(count_lines(res.output) == 1);
  CHECK(json_field(res.output, "m") == "3");
}

TEST_CASE("oracle flow and brute agree on the density field") {
  write_file("cli_oracle.stream",
             "# n=6\n+ 0 1\n+ 0 2\n+ 1 2\n+ 3 4\n?\n+ 4 5\n?\n");
  auto flow = run_cmd("oracle --algo flow cli_oracle.stream");
  auto brute = run_cmd("oracle --algo brute cli_oracle.stream");
  CHECK(flow.exit_code == 0);
  CHECK(brute.exit_code == 0);
  std::istringstream a(flow.output), b(brute.output);
  std::string la, lb;
  int compared = 0;
  while (std::getline(a, la) && std::getline(b, lb)) {
    CHECK(json_field(la, "density") == json_field(lb, "density"));
    ++compared;
  }
  CHECK(compared == 2);
}

TEST_CASE("missing header exits 2") {
  write_file("cli_nohdr.stream", "+ 0 1\n?\n");
  CHECK(run_cmd("run --mode full cli_nohdr.stream").exit_code == 2);
}

TEST_CASE("precondition violations exit 3") {
  write_file("cli_dup.stream", "# n=4\n+ 0 1\n+ 0 1\n?\n");
  CHECK(run_cmd("run --mode full cli_dup.stream").exit_code == 3);
  write_file("cli_del.stream", "# n=4\n- 0 1\n?\n");
  CHECK(run_cmd("run --mode stream cli_del.stream").exit_code == 3);
}

TEST_CASE("generator determinism and shape") {
  auto a = run_cmd("gen --kind churn --n 50 --steps 2000 --seed 7");
  auto b = run_cmd("gen --kind churn --n 50 --steps 2000 --seed 7");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);  // byte-identical
  auto c = run_cmd("gen --kind churn --n 50 --steps 2000 --seed 8");
  CHECK(a.output != c.output);

  auto clique = run_cmd("gen --kind clique-buildup --k 10");
  CHECK(clique.exit_code == 0);
  int inserts = 0, queries = 0;
  std::istringstream in(clique.output);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("+", 0) == 0) ++inserts;
    if (line == "?") ++queries;
  }
  CHECK(inserts == 45);
  CHECK(queries == 1);
}

TEST_CASE("planted clique reaches the promised density") {
  auto gen = run_cmd(
      "gen --kind planted-clique --n 200 --k 15 --p 0.05 --seed 3 "
      "--out cli_planted.stream");
  CHECK(gen.exit_code == 0);
  auto res = run_cmd("oracle --algo charikar cli_planted.stream");
  CHECK(res.exit_code == 0);
  // greedy peeling is a lower bound on the optimum; (k-1)/2 = 7
  double density = std::stod(json_field(res.output, "density"));
  CHECK(density >= 7.0 - 1e-9);
}

TEST_CASE("every engine accepts every generator output") {
  std::vector<std::string> kinds = {"erdos-renyi-dynamic", "planted-clique",
                                    "clique-buildup", "churn"};
  std::vector<std::string> modes = {"full", "oneshot", "stream"};
  for (const auto& kind : kinds) {
    auto gen = run_cmd("gen --kind " + kind +
                       " --n 30 --k 6 --p 0.08 --steps 300 --seed 5 --out "
                       "cli_matrix.stream");
    REQUIRE(gen.exit_code == 0);
    for (const auto& mode : modes) {
      auto res = run_cmd("run --mode " + mode +
                         " --scale 0.5 cli_matrix.stream");
      CHECK_MESSAGE(res.exit_code == 0, kind, " via ", mode);
    }
  }
}

TEST_CASE("identical config and seed replay byte-identically") {
  run_cmd("gen --kind churn --n 40 --steps 500 --seed 11 --out cli_rep.stream");
  auto a = run_cmd("run --mode stream --seed 9 --checkpoint-every 50 cli_rep.stream");
  auto b = run_cmd("run --mode stream --seed 9 --checkpoint-every 50 cli_rep.stream");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
}

TEST_CASE("compare reports ratios within the declared bound") {
  run_cmd("gen --kind clique-buildup --k 10 --out cli_k10.stream");
  auto res = run_cmd("compare --mode full cli_k10.stream");
  CHECK(res.exit_code == 0);
  std::istringstream in(res.output);
  std::string line, last;
  while (std::getline(in, line)) last = line;
  CHECK(last.find("\"summary\":true") != std::string::npos);
  CHECK(json_field(last, "failures") == "0");
}

TEST_CASE("compare on an empty stream emits an empty report") {
  write_file("cli_empty.stream", "# n=10\n");
  auto res = run_cmd("compare --mode full cli_empty.stream");
  CHECK(res.exit_code == 0);
  CHECK(res.output.empty());
}

TEST_CASE("oneshot compare reports a trial failure rate") {
  run_cmd("gen --kind clique-buildup --k 12 --out cli_k12.stream");
  auto res = run_cmd("compare --mode oneshot --trials 10 cli_k12.stream");
  CHECK(res.exit_code == 0);
  std::istringstream in(res.output);
  std::string line, last;
  int lines = 0;
  while (std::getline(in, line)) {
    last = line;
    ++lines;
  }
  CHECK(lines == 11);  // 10 trials + summary
  CHECK(last.find("\"trials\":10") != std::string::npos);
}

TEST_CASE("dump emits the peeled decomposition as json") {
  run_cmd("gen --kind clique-buildup --k 5 --out cli_k5.stream");
  auto res = run_cmd("dump --alpha 1 --d 1.5 --L 4 cli_k5.stream");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"levels\":[4,4,4,4,4]") != std::string::npos);
}

TEST_CASE("diag reports sampler occupancy") {
  run_cmd("gen --kind churn --n 30 --steps 200 --seed 2 --out cli_diag.stream");
  auto res = run_cmd("diag --what sparse cli_diag.stream");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"occupancy\"") != std::string::npos);
}

TEST_CASE("env seed override changes the sampled run") {
  run_cmd("gen --kind churn --n 40 --steps 800 --target-m 120 --seed 4 "
          "--out cli_env.stream");
  auto base = run_cmd("run --mode oneshot --seed 1 cli_env.stream");
  std::string cmd = "DENSESTREAM_SEED=123456 " + bin() +
                    " run --mode oneshot --seed 1 cli_env.stream > "
                    "cli_env_out.tmp 2>/dev/null";
  int rc = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(rc) == 0);
  std::ifstream f("cli_env_out.tmp");
  std::stringstream ss;
  ss << f.rdbuf();
  // the env var must take effect; with a different seed the estimate may
  // move, but the record must still parse and the run must succeed
  CHECK(!ss.str().empty());
}
