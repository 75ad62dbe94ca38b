#include <catch2/catch_amalgamated.hpp>

#include <symorb/report.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

using symorb::ClassificationReport;
using symorb::report_from_json_text;

namespace {

struct RunResult {
  int code = -1;
  std::string output;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(SYMORB_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got;
  while ((got = ::fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

ClassificationReport parse_report(const std::string& text) {
  ClassificationReport r = report_from_json_text(text);
  r.runtime_ms = 0.0;  // timing is the one legitimately unstable field
  return r;
}

std::string write_temp(const char* stem, const std::string& content) {
  const std::string path = std::string("/tmp/symorb_cli_") + stem + "_" +
                           std::to_string(::getpid()) + ".json";
  std::ofstream out(path);
  out << content;
  return path;
}

const char* kSpec32 = R"({
  "moduli": [2, 2, 2, 2, 2],
  "states": {"predicate": "even_weight"},
  "generators": [
    {"label": "r1", "perm": [2, 1, 3, 4, 5], "units": [1, 1, 1, 1, 1], "twist": [0, 0, 0, 0, 0]},
    {"label": "r2", "perm": [1, 3, 2, 4, 5], "units": [1, 1, 1, 1, 1], "twist": [0, 0, 0, 0, 0]},
    {"label": "r3", "perm": [1, 2, 4, 3, 5], "units": [1, 1, 1, 1, 1], "twist": [0, 0, 1, 1, 0]},
    {"label": "r4", "perm": [1, 2, 3, 5, 4], "units": [1, 1, 1, 1, 1], "twist": [0, 0, 0, 0, 0]}
  ],
  "description": "loaded copy"
})";

}  // namespace

TEST_CASE("classify renders the frozen table") {
  const RunResult r = run_cli("classify --family sl-so --p 2 --q 1");
  CHECK(r.code == 0);
  CHECK(r.output ==
        "family: sl-so p=2 q=1 mode=twisted\n"
        "states: 4\n"
        "counts: twisted=2\n"
        "orbits:\n"
        "  representative diag size canonical signature\n"
        "  (0,0,0)        +++  3    +++       (2,1)\n"
        "  (1,1,0)        --+  1    --+       (0,3)\n");
}

TEST_CASE("classify emits machine-readable JSON") {
  const RunResult r =
      run_cli("classify --family sl-so --p 2 --q 1 --format json");
  REQUIRE(r.code == 0);
  const ClassificationReport rep = parse_report(r.output);
  CHECK(rep.schema_version == "1");
  CHECK(rep.family == "sl-so p=2 q=1 mode=twisted");
  CHECK(rep.state_count == 4);
  CHECK(rep.counts.at("twisted") == 2);
  REQUIRE(rep.orbits.size() == 2);
  CHECK(rep.orbits[0].size == 3);
  CHECK(rep.orbits[1].size == 1);
}

TEST_CASE("classify output is deterministic") {
  const std::string cmd = "classify --family sl-so --p 3 --q 2";
  const RunResult a = run_cli(cmd);
  const RunResult b = run_cli(cmd);
  CHECK(a.code == 0);
  CHECK(a.output == b.output);

  const RunResult ja = run_cli(cmd + " --format json");
  const RunResult jb = run_cli(cmd + " --format json");
  CHECK(parse_report(ja.output) == parse_report(jb.output));
}

TEST_CASE("comparison counts match the expected separation") {
  const RunResult small =
      run_cli("classify --family sl-so --p 1 --q 1 --compare --format json");
  REQUIRE(small.code == 0);
  const ClassificationReport sr = parse_report(small.output);
  CHECK(sr.counts.at("twisted") == 1);
  CHECK(sr.counts.at("plain_w0") == 2);
  CHECK(sr.counts.at("plain_w00") == 2);

  const RunResult mid =
      run_cli("classify --family sl-so --p 2 --q 2 --compare --format json");
  REQUIRE(mid.code == 0);
  const ClassificationReport mr = parse_report(mid.output);
  CHECK(mr.counts.at("twisted") == 3);
  CHECK(mr.counts.at("plain_w00") == 5);

  const RunResult w00 = run_cli(
      "classify --family sl-so --p 2 --q 2 --mode plain-w00 --format json");
  REQUIRE(w00.code == 0);
  CHECK(parse_report(w00.output).counts.at("plain_w00") == 5);
}

TEST_CASE("table subcommand") {
  const RunResult r = run_cli("table --family sl-so --max-n 3");
  CHECK(r.code == 0);
  CHECK(r.output ==
        "sl-so orbit counts, n = p+q up to 3\n"
        "  p q twisted plain_w00 match\n"
        "  1 1 1       2         no\n"
        "  1 2 2       3         no\n"
        "  2 1 2       3         no\n");

  const RunResult j = run_cli("table --family sl-so --max-n 4 --format json");
  REQUIRE(j.code == 0);
  const nlohmann::json parsed = nlohmann::json::parse(j.output);
  CHECK(parsed["max_n"] == 4);
  REQUIRE(parsed["rows"].size() == 6);
  CHECK(parsed["rows"][4]["p"] == 2);
  CHECK(parsed["rows"][4]["q"] == 2);
  CHECK(parsed["rows"][4]["twisted"] == 3);
  CHECK(parsed["rows"][4]["plain_w00"] == 5);
  CHECK(parsed["rows"][4]["match"] == false);
}

TEST_CASE("classifying a spec file from disk") {
  const std::string path = write_temp("spec32", kSpec32);

  const RunResult r = run_cli("classify --spec " + path + " --format json");
  REQUIRE(r.code == 0);
  const ClassificationReport loaded = parse_report(r.output);
  CHECK(loaded.family == "loaded copy");
  CHECK(loaded.counts.at("twisted") == 3);
  CHECK(loaded.state_count == 16);

  const RunResult built =
      run_cli("classify --family sl-so --p 3 --q 2 --format json");
  REQUIRE(built.code == 0);
  const ClassificationReport direct = parse_report(built.output);
  REQUIRE(loaded.orbits.size() == direct.orbits.size());
  for (std::size_t i = 0; i < loaded.orbits.size(); ++i) {
    CHECK(loaded.orbits[i].representative == direct.orbits[i].representative);
    CHECK(loaded.orbits[i].size == direct.orbits[i].size);
  }

  std::remove(path.c_str());
}

TEST_CASE("selftest subcommand") {
  const RunResult ok = run_cli("selftest --max-n 4");
  CHECK(ok.code == 0);
  CHECK(ok.output.find("selftest: ok") != std::string::npos);
  CHECK(ok.output.find("suite cocycle") != std::string::npos);
  CHECK(ok.output.find("FAIL") == std::string::npos);

  const RunResult single = run_cli("selftest --suite abelian --max-n 4");
  CHECK(single.code == 0);
  CHECK(single.output.find("suite abelian") != std::string::npos);

  const RunResult unknown = run_cli("selftest --suite nonsense");
  CHECK(unknown.code == 1);
  CHECK(unknown.output.find("unknown suite") != std::string::npos);

  const RunResult injected = run_cli("selftest --max-n 4 --inject-zero-twist");
  CHECK(injected.code == 1);
  CHECK(injected.output.find("selftest: FAIL") != std::string::npos);

  const RunResult help = run_cli("selftest --help");
  CHECK(help.code == 0);
  CHECK(help.output.find("inject-zero-twist") == std::string::npos);
}

TEST_CASE("exit codes separate input errors from resource limits") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("").code == 1);
  CHECK(run_cli("classify").code == 1);
  CHECK(run_cli("classify --family sl-so").code == 1);
  CHECK(run_cli("classify --family bogus --p 2 --q 1").code == 1);
  CHECK(run_cli("classify --family sl-so --p 0 --q 2").code == 1);
  CHECK(run_cli("classify --family sl-so --p 2 --q 1 --mode bogus").code == 1);
  CHECK(run_cli("classify --spec /tmp/symorb_cli_missing.json").code == 1);
  CHECK(run_cli("table --family sl-so").code == 1);
  CHECK(run_cli("table --family bogus --max-n 3").code == 1);

  const std::string path = write_temp("exclusive", kSpec32);
  CHECK(run_cli("classify --spec " + path + " --family sl-so --p 3 --q 2")
            .code == 1);
  CHECK(run_cli("classify --spec " + path + " --compare").code == 1);
  std::remove(path.c_str());

  const std::string bad = write_temp(
      "badtwist",
      R"({"moduli": [2, 2, 2], "states": {"predicate": "even_weight"},
          "generators": [{"label": "g", "perm": [1, 2, 3],
                          "units": [1, 1, 1], "twist": [1, 0, 0]}]})");
  CHECK(run_cli("classify --spec " + bad).code == 1);
  std::remove(bad.c_str());

  CHECK(run_cli("classify --family sl-so --p 2 --q 2 --limit 4").code == 2);
  CHECK(run_cli("classify --family sl-so --p 20 --q 9").code == 2);
  CHECK(run_cli("table --family sl-so --max-n 1").code == 2);
  CHECK(run_cli("table --family sl-so --max-n 25").code == 2);

  const std::string big = write_temp("biglimit", kSpec32);
  CHECK(run_cli("classify --spec " + big + " --limit 4").code == 2);
  std::remove(big.c_str());
}

TEST_CASE("errors name the offending input") {
  const RunResult r = run_cli("classify --spec /tmp/symorb_cli_missing.json");
  CHECK(r.output.find("/tmp/symorb_cli_missing.json") != std::string::npos);

  const RunResult mode = run_cli("classify --family sl-so --p 2 --q 1 --mode bogus");
  CHECK(mode.output.find("--mode") != std::string::npos);
}
