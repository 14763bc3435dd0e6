#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "stab/cli.hpp"

using namespace stab;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return std::string(FIXTURES_DIR) + "/" + name; }

}  // namespace

TEST_CASE("prob prints dyadic and decimal forms") {
  auto r = run({"prob", fx("bell.scf"), "--outcome", "00"});
  CHECK(r.code == 0);
  CHECK(r.out == "p = 1/2^1 (= 0.5)\n");
  auto r2 = run({"prob", fx("bell.scf"), "--outcome", "01"});
  CHECK(r2.code == 0);
  CHECK(r2.out == "p = 0/2^0 (= 0)\n");
}

TEST_CASE("prob accepts every strategy") {
  for (const char* s : {"seq", "chan", "greedy"}) {
    auto r = run({"prob", fx("ghz3.scf"), "--outcome", "111", "--strategy", s});
    CHECK(r.code == 0);
    CHECK(r.out == "p = 1/2^1 (= 0.5)\n");
  }
  CHECK(run({"prob", fx("ghz3.scf"), "--outcome", "111", "--strategy", "bogus"}).code == 1);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"prob", fx("bell.scf")}).code == 1);                     // missing --outcome
  CHECK(run({"prob", fx("bell.scf"), "--outcome", "0"}).code == 1);   // wrong length
  CHECK(run({"prob", fx("bell.scf"), "--outcome", "2x"}).code == 1);  // not bits
  CHECK(run({"prob", fx("no_such_file.scf"), "--outcome", "00"}).code == 1);
}

TEST_CASE("parse errors exit 2 with a line number") {
  const std::string bad = std::string(FIXTURES_DIR) + "/../test_cli_bad.scf.tmp";
  {
    std::ofstream f(bad);
    f << "qubits 1\nFOO 0\n";
  }
  auto r2 = run({"channel", bad});
  CHECK(r2.code == 2);
  CHECK(r2.err.find("line 2") != std::string::npos);
  std::remove(bad.c_str());
}

TEST_CASE("infeasible post-selection exits 3") {
  CHECK(run({"prob", fx("postselect_contradict.scf"), "--outcome", "0"}).code == 3);
  CHECK(run({"sample", fx("postselect_contradict.scf"), "--shots", "2", "--seed", "1"})
            .code == 3);
  CHECK(run({"channel", fx("postselect_contradict.scf")}).code == 3);
}

TEST_CASE("sample is deterministic in the seed") {
  auto a = run({"sample", fx("bell.scf"), "--shots", "5", "--seed", "7"});
  auto b = run({"sample", fx("bell.scf"), "--shots", "5", "--seed", "7"});
  auto c = run({"sample", fx("bell.scf"), "--shots", "5", "--seed", "8"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  std::istringstream lines(a.out);
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    ++n;
    CHECK((line == "00" || line == "11"));
  }
  CHECK(n == 5);
}

TEST_CASE("channel prints the canonical tableau") {
  auto r = run({"channel", fx("bell.scf")});
  CHECK(r.code == 0);
  CHECK(r.out == "channel 0 -> 2\n|1010|0\n");
}

TEST_CASE("verify matches the dense oracle on the corpus") {
  for (const char* name : {"bell.scf", "ghz3.scf", "teleport.scf", "dephase_discard.scf",
                           "postselect.scf"}) {
    auto r = run({"verify", fx(name)});
    CHECK_MESSAGE(r.code == 0, name, ": ", r.err);
  }
  CHECK(run({"verify", fx("teleport.scf"), "--max-qubits", "2"}).code == 1);
}
