#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

namespace {

struct RunResult {
  int code = -1;
  std::string out;  // stdout and stderr combined
};

// Runs a full shell command and captures everything it prints.
RunResult shell(const std::string& cmd) {
  RunResult result;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  size_t n;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0)
    result.out.append(buffer, n);
  int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string cli() { return std::string("'") + SQEVAL_CLI_PATH + "'"; }

RunResult run(const std::string& args) { return shell(cli() + " " + args); }

RunResult run_stdin(const std::string& text, const std::string& args) {
  return shell("printf '%s' '" + text + "' | " + cli() + " " + args);
}

}  // namespace

TEST_CASE("evaluate reads standard input by default") {
  RunResult r = run_stdin("h[p,q] c(p) a(q)", "evaluate");
  CHECK(r.code == 0);
  CHECK(r.out == "+1 h[m,m]\n");
}

TEST_CASE("evaluate renders latex on request") {
  RunResult r = run_stdin("h[p,q] c(p) a(q)", "evaluate --format latex");
  CHECK(r.code == 0);
  CHECK(r.out == "+ h_{mm}\n");
}

TEST_CASE("evaluate prints statistics when asked") {
  RunResult r = run_stdin("h[p,q] c(p) a(q)", "evaluate --stats");
  CHECK(r.code == 0);
  CHECK(r.out == "+1 h[m,m]\n# terms: 1\n# iterations: 4\n");
}

TEST_CASE("evaluate accepts a preset and is deterministic") {
  RunResult first = run("evaluate --preset cid-h2 --stats");
  CHECK(first.code == 0);
  CHECK(first.out.find("# terms: 40") != std::string::npos);
  RunResult second = run("evaluate --preset cid-h2 --stats");
  CHECK(second.out == first.out);
}

TEST_CASE("evaluate reads a file with --input") {
  std::string path = "cli_input.sq";
  std::ofstream(path) << "# one-electron trace\nh[p,q] c(p) a(q)\n";
  RunResult r = run("evaluate -i " + path);
  CHECK(r.code == 0);
  CHECK(r.out == "+1 h[m,m]\n");
  std::remove(path.c_str());
}

TEST_CASE("parse failures exit with the parse status") {
  std::string path = "cli_bad.sq";
  std::ofstream(path) << "h[p,q\n";
  RunResult r = run("evaluate -i " + path);
  CHECK(r.code == 1);
  CHECK(r.out.find("error: parse:") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("check agrees with itself on a preset") {
  RunResult r = run("check --preset cis-h1 --trials 3");
  CHECK(r.code == 0);
  CHECK(r.out.find("result: pass") != std::string::npos);
}

TEST_CASE("check honors the budget environment variable") {
  RunResult r = shell("SQ_EVAL_BUDGET=10 " + cli() +
                      " check --preset cid-h2 --trials 1");
  CHECK(r.code == 4);
  CHECK(r.out.find("error: check:") != std::string::npos);
}

TEST_CASE("check warns on a malformed budget variable") {
  RunResult r = shell("SQ_EVAL_BUDGET=banana " + cli() +
                      " check --preset anion-h1 --trials 1");
  CHECK(r.code == 0);
  CHECK(r.out.find("warning: ignoring malformed SQ_EVAL_BUDGET") !=
        std::string::npos);
  CHECK(r.out.find("result: pass") != std::string::npos);
}

TEST_CASE("usage errors exit with the usage status") {
  CHECK(run("evaluate --preset bogus").code == 64);
  CHECK(run("check --nocc 0").code == 64);
  CHECK(run("").code == 64);
  CHECK(run("preset").code == 64);
  RunResult r = run("preset bogus");
  CHECK(r.code == 64);
  CHECK(r.out.find("unknown preset") != std::string::npos);
}

TEST_CASE("preset and input are mutually exclusive") {
  RunResult r = run("evaluate --preset cis-h1 -i somefile");
  CHECK(r.code == 64);
  CHECK(r.out.find("mutually exclusive") != std::string::npos);
}

TEST_CASE("preset prints sources and the list of names") {
  RunResult r = run("preset cis-h1");
  CHECK(r.code == 0);
  CHECK(r.out ==
        "t[j=>b] t[i=>a] c(j) a(b) c(p) a(q) c(a) a(i) h[p,q]\n");

  RunResult list = run("preset --list");
  CHECK(list.code == 0);
  int lines = 0;
  for (char c : list.out) lines += c == '\n';
  CHECK(lines == 8);
  CHECK(list.out.find("cid-h2") != std::string::npos);
}

TEST_CASE("version flag") {
  RunResult r = run("--version");
  CHECK(r.code == 0);
  CHECK(r.out == "1.0.0\n");
}
