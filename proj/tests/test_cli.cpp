#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "thompson/cli.hpp"

using namespace thompson;

namespace {

struct RunResult {
  int status;
  std::string out, err;
};

RunResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("word grammar") {
  CHECK(parse_word("ABaaaaBAA") == family_word(FamilyKind::F, 2));
  CHECK(parse_word("").empty());
  CHECK(parse_word("x0 x1^-1") == Word{Generator::X0, Generator::X1Inv});
  CHECK(parse_word("x0x1") == Word{Generator::X0, Generator::X1});
  CHECK(parse_word(" a\tB\n") == Word{Generator::X0, Generator::X1Inv});
  CHECK(word_to_string(parse_word("x0 x1 x0^-1 x1^-1")) == "abAB");

  CHECK_THROWS_AS(parse_word("a^3"), ParseError);
  CHECK_THROWS_AS(parse_word("x2"), ParseError);
  CHECK_THROWS_AS(parse_word("abq"), ParseError);
  try {
    parse_word("ab?");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
}

TEST_CASE("eval command") {
  RunResult r = run_cli({"eval", ""});
  CHECK(r.status == 0);
  CHECK(r.out.find("key: 0|0") != std::string::npos);

  RunResult rj = run_cli({"eval", "a", "--json"});
  CHECK(rj.status == 0);
  auto j = nlohmann::json::parse(rj.out);
  CHECK(j["key"] == "11000|10100");
  CHECK(j["domain"].size() == 3);
  CHECK(j["domain"][0] == "[0/2^2,1/2^2]");
}

TEST_CASE("len command") {
  RunResult r = run_cli({"len", "ABaaaaBAA"});
  CHECK(r.status == 0);
  CHECK(r.out == "9\n");
  RunResult rid = run_cli({"len", ""});
  CHECK(rid.out == "0\n");
  RunResult bad = run_cli({"len", "a^2"});
  CHECK(bad.status == 1);
  CHECK(bad.err.find("error:") != std::string::npos);

  // the radius cap is a flag; too small a cap is a reported failure, not a hang
  RunResult capped = run_cli({"--radius", "2", "len", "ABaaaaBAA"});
  CHECK(capped.status == 1);
  CHECK(capped.err.find("radius") != std::string::npos);
}

TEST_CASE("len command with the table backend") {
  RunResult r = run_cli({"len", "ABaaaaBAA", "--fordham-table", "data/fordham.table"});
  CHECK(r.status == 0);
  CHECK(r.out == "9\n");
  RunResult missing = run_cli({"len", "a", "--fordham-table", "no/such/file"});
  CHECK(missing.status == 1);
  CHECK(missing.err.find("error:") != std::string::npos);
}

TEST_CASE("trace and events commands emit the schema") {
  RunResult r = run_cli({"trace", "ABaaaaBAA", "--track", "family", "-k", "2"});
  CHECK(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["word"] == "ABaaaaBAA");
  CHECK(j["steps"].size() == 10);
  CHECK(j["events"].size() == 2);

  RunResult again = run_cli({"trace", "ABaaaaBAA", "--track", "family", "-k", "2"});
  CHECK(again.out == r.out);  // byte-identical output

  RunResult ev = run_cli({"events", "ABaaaaBAA", "--track", "family", "-k", "2", "--text"});
  CHECK(ev.status == 0);
  CHECK(ev.out.find("t=2 vertex=11 MadeInterior") != std::string::npos);
  CHECK(ev.out.find("t=7 vertex=00 MadeInterior") != std::string::npos);

  RunResult custom = run_cli({"trace", "b", "--track", "root,10"});
  CHECK(custom.status == 0);
  auto cj = nlohmann::json::parse(custom.out);
  CHECK(cj["tracked"][0] == "");
  CHECK(cj["steps"][1]["positions"]["10"] == "1");
}

TEST_CASE("fellow command") {
  RunResult r = run_cli({"fellow", "aBa", "aBa"});
  CHECK(r.status == 0);
  CHECK(r.out == "0\n");
}

TEST_CASE("ball command builds and reloads a cache") {
  std::string path = (std::filesystem::temp_directory_path() / "thompson_ball_test.cache").string();
  std::remove(path.c_str());
  RunResult built = run_cli({"ball", "-r", "3", "--cache", path});
  CHECK(built.status == 0);
  CHECK(built.out.find("built radius=3 members=53") != std::string::npos);
  RunResult loaded = run_cli({"ball", "-r", "3", "--cache", path});
  CHECK(loaded.status == 0);
  CHECK(loaded.out.find("loaded radius=3 members=53") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("enum and shortlex commands stream words") {
  RunResult r = run_cli({"enum", "", "-c", "0"});
  CHECK(r.status == 0);
  CHECK(r.out == "\n");  // the empty word

  RunResult sl = run_cli({"shortlex", "--max-len", "1"});
  CHECK(sl.status == 0);
  CHECK(sl.out == "\na\nb\nA\nB\n");

  RunResult from_args = run_cli({"shortlex", "aA", "b", ""});
  CHECK(from_args.status == 0);
  CHECK(from_args.out == "\nb\n");
}

TEST_CASE("family-verify command") {
  RunResult r = run_cli({"family-verify", "-k", "2"});
  CHECK(r.status == 0);
  CHECK(r.out.find("all items pass") != std::string::npos);

  RunResult rj = run_cli({"family-verify", "-k", "3", "--json"});
  CHECK(rj.status == 0);
  auto j = nlohmann::json::parse(rj.out);
  CHECK(j["all_pass"] == true);
}

TEST_CASE("show command emits DOT") {
  RunResult r = run_cli({"show", "ab"});
  CHECK(r.status == 0);
  CHECK(r.out.rfind("digraph", 0) == 0);
  long depth = 0;
  for (char c : r.out) {
    if (c == '{') ++depth;
    if (c == '}') --depth;
  }
  CHECK(depth == 0);
}

TEST_CASE("bad invocations exit nonzero") {
  CHECK(run_cli({"frobnicate"}).status != 0);
  CHECK(run_cli({}).status != 0);
  CHECK(run_cli({"trace", "a", "--track", "family"}).status == 1);  // missing -k
}
