#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "nomlang/hds_io.hpp"
#include "support.hpp"

using namespace testing;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  int code = nomlang::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string corpus(const char* file) { return std::string(NOMLANG_CORPUS_DIR) + "/" + file; }

std::string temp_file(const std::string& name, const std::string& text) {
  fs::path dir = fs::temp_directory_path() / "nomlang_test_cli";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p) << text;
  return p.string();
}

std::size_t lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("usage errors") {
  CHECK(invoke({}).code == nomlang::cli::kUsage);
  CHECK(invoke({"frobnicate"}).code == nomlang::cli::kUsage);
  CHECK(invoke({"enumerate", corpus("worked.nre")}).code == nomlang::cli::kUsage);
  CHECK(invoke({"--help"}).code == nomlang::cli::kOk);
  Result missing = invoke({"dot", "/nonexistent/x.hds"});
  CHECK(missing.code == nomlang::cli::kUsage);
  CHECK(missing.err.find("error:") == 0);
  Result syntax = invoke({"dot", temp_file("bad.nre", "#n +\n")});
  CHECK(syntax.code == nomlang::cli::kUsage);
  CHECK(syntax.err.find("bad.nre:2:1: unexpected end") != std::string::npos);
  CHECK(invoke({"compile", corpus("worked.nre"), "--star", "sideways"}).code == nomlang::cli::kUsage);
}

TEST_CASE("compile") {
  std::string out = (fs::temp_directory_path() / "nomlang_test_cli" / "worked.hds").string();
  fs::create_directories(fs::path(out).parent_path());
  Result r = invoke({"compile", corpus("worked.nre"), "-o", out});
  CHECK(r.code == 0);
  CHECK(r.out == "wrote " + out + ": 8 states, 9 transitions\n");
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  Hds h = parse_hds(ss.str());
  CHECK(h.states.size() == 8);
  CHECK(validate(h).empty());

  Result s = invoke({"compile", corpus("worked.nre")});
  CHECK(s.out == ss.str());
  CHECK(s.err == "8 states, 9 transitions\n");
}

TEST_CASE("accept") {
  std::string np = corpus("n_plus.hds");
  CHECK(invoke({"accept", np, "#n #n"}).out == "ACCEPT\n");
  CHECK(invoke({"accept", np, "#n #m"}).code == nomlang::cli::kFail);
  CHECK(invoke({"accept", np, "#n #m"}).out == "REJECT\n");
  Result t = invoke({"accept", np, "#n #n", "--trace"});
  CHECK(t.code == 0);
  CHECK(lines(t.out) == 5);
  Result b = invoke({"accept", np, "#n #n #n", "--fuel", "1"});
  CHECK(b.code == nomlang::cli::kBudget);
  CHECK(b.out.rfind("BUDGET EXHAUSTED after ", 0) == 0);
  CHECK(invoke({"accept", corpus("worked.nre"), "#m <#n. #m #n > <#k. #m #k >"}).code == 0);
  CHECK(invoke({"accept", corpus("worked.nre"), "#m <#n. #n #n >"}).code == nomlang::cli::kFail);
  CHECK(invoke({"accept", np, "#n <"}).code == nomlang::cli::kUsage);
}

TEST_CASE("enumerate lists the same words for a regex and its compilation") {
  std::string hds = temp_file("pairs.hds", invoke({"compile", corpus("fresh_pairs.nre")}).out);
  Result a = invoke({"enumerate", corpus("fresh_pairs.nre"), "--bound", "9", "--pool", "0"});
  Result b = invoke({"enumerate", hds, "--bound", "9"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == "<#_0. #_0 >\n<#_0. #_0 <#_1. <#_2. #_1 #_2 > > >\n");

  Result w = invoke({"enumerate", corpus("worked.nre"), "--bound", "4", "--pool", "#m #z"});
  CHECK(w.out == "#m\n");
  Result plain = invoke({"enumerate", corpus("fresh_names.nre"), "--bound", "6", "--plain", "--pool", "2",
                         "--sort", "S"});
  // Over the pool {p1, p2}: epsilon, two singletons, two ordered pairs.
  CHECK(lines(plain.out) == 5);
  CHECK(invoke({"enumerate", hds, "--bound", "4", "--sort", "G"}).code == nomlang::cli::kUsage);
}

TEST_CASE("check") {
  Result ok = invoke({"check", corpus("worked.nre"), "--bound", "8"});
  CHECK(ok.code == 0);
  CHECK(ok.out.rfind("PASS ", 0) == 0);

  // A corrupted automaton: the worked example with its final state dropped.
  Hds h = parse_hds(invoke({"compile", corpus("worked.nre")}).out);
  h.finals.clear();
  std::string broken = temp_file("broken.hds", write_hds(h));
  Result bad = invoke({"check", corpus("worked.nre"), "--against", broken, "--bound", "6"});
  CHECK(bad.code == nomlang::cli::kFail);
  CHECK(bad.out.rfind("FAIL ", 0) == 0);
  CHECK(bad.out.find("only-regex") != std::string::npos);

  Result rnd = invoke({"check", "--random", "20", "--seed", "3", "--bound", "6"});
  CHECK(rnd.code == 0);
  CHECK(rnd.out.find("20/20 passed, seed 3, bound 6\n") != std::string::npos);
  CHECK(rnd.out == invoke({"check", "--random", "20", "--seed", "3", "--bound", "6"}).out);

  CHECK(invoke({"check", corpus("worked.nre"), "--pool", "#n"}).code == nomlang::cli::kUsage);
  CHECK(invoke({"check"}).code == nomlang::cli::kUsage);
}

TEST_CASE("dot") {
  Result r = invoke({"dot", corpus("n_plus.hds")});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("digraph", 0) == 0);
  CHECK(r.out == to_dot(n_plus()));
}
