#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "ahp/cli/cli.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ahp::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("ahp-cli-" + std::to_string(::getpid()) + "-" +
                                         std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name, std::ios::binary) << text;
    return (path_ / name).string();
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
  static inline int counter_ = 0;
};

const std::string kCyclic = R"({
  "version": "1.0",
  "hierarchy": {"id": "G", "children": [{"id": "a"}, {"id": "b"}, {"id": "c"}]},
  "matrices": {"G": [[1, 3, 0.3333333333], [0.3333333333, 1, 3], [3, 0.3333333333, 1]]}
})";

const std::string kNonReciprocal = R"({
  "version": "1.0",
  "hierarchy": {"id": "G", "children": [{"id": "a"}, {"id": "b"}]},
  "matrices": {"G": [[1, 2], [0.4, 1]]}
})";

std::string fixture() { return oracle::fixture_path(); }

Outcome run_binary(const std::string& args) {
  const std::string cmd = std::string(AHP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, {}};
}

}  // namespace

TEST_SUITE("commands") {
  TEST_CASE("rank") {
    auto r = run_cli({"rank", fixture()});
    CHECK(r.code == 0);
    auto first = r.out.substr(0, r.out.find('\n'));
    CHECK(first.find("C11") != std::string::npos);
    CHECK(first.find("0.2450") != std::string::npos);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 23);
    CHECK(r.err.empty());
  }

  TEST_CASE("check passes every fixture matrix") {
    auto r = run_cli({"check", fixture()});
    CHECK(r.code == ahp::cli::kSuccess);
    std::istringstream lines(r.out);
    int rows = 0;
    for (std::string line; std::getline(lines, line); ++rows) {
      CHECK(line.find("CR=0.0000 PASS") != std::string::npos);
    }
    CHECK(rows == 7);
  }

  TEST_CASE("validate") {
    auto r = run_cli({"validate", fixture()});
    CHECK(r.code == 0);
    CHECK(r.out.find("OK    B6") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
  }

  TEST_CASE("weights for one node and for all") {
    auto r = run_cli({"weights", fixture(), "--node", "B2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("B2  C24  0.3720") != std::string::npos);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);
    auto all = run_cli({"weights", fixture()});
    CHECK(all.code == 0);
    CHECK(std::count(all.out.begin(), all.out.end(), '\n') == 6 + 23);
    auto precise = run_cli({"--precision", "6", "weights", fixture(), "--node", "B2"});
    CHECK(precise.out.find("0.371996") != std::string::npos);
  }

  TEST_CASE("evaluate writes a csv report") {
    TempDir dir;
    auto out = dir.file("report.csv");
    auto r = run_cli({"evaluate", fixture(), "--out", out});
    CHECK(r.code == 0);
    auto csv = oracle::read_file(out);
    CHECK(csv.rfind("node,order,weights", 0) == 0);
    CHECK(r.out.find("Composite weight ranking") != std::string::npos);
  }

  TEST_CASE("evaluate --json") {
    auto r = run_cli({"evaluate", fixture(), "--json"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["ranking"][0]["leaf"] == "C11");
    CHECK(j["all_passed"] == true);
  }

  TEST_CASE("report") {
    auto csv = run_cli({"report", fixture(), "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(csv.out.find("C24,") != std::string::npos);
    auto text = run_cli({"report", fixture(), "--format", "text"});
    CHECK(text.out.find("Indicator weights and consistency") != std::string::npos);
    TempDir dir;
    auto path = dir.file("r.txt");
    CHECK(run_cli({"report", fixture(), "--format", "text", "--out", path}).code == 0);
    CHECK(oracle::read_file(path) == text.out);
  }

  TEST_CASE("ri-simulate") {
    auto r = run_cli({"ri-simulate", "--order", "4", "--samples", "100000", "--seed", "7"});
    CHECK(r.code == 0);
    CHECK(std::abs(std::stod(r.out) - 0.90) <= 0.1);
  }

  TEST_CASE("custom RI table from the environment") {
    TempDir dir;
    auto table = dir.write("ri.json", R"({"ri": [0, 0, 0.5, 0.8, 1.0, 1.5, 1.6]})");
    ::setenv("AHP_RI_TABLE", table.c_str(), 1);
    auto r = run_cli({"check", fixture()});
    auto bad = dir.write("bad.json", R"({"ri": [0, 0, 0.9, 0.5]})");
    ::setenv("AHP_RI_TABLE", bad.c_str(), 1);
    auto broken = run_cli({"check", fixture()});
    ::unsetenv("AHP_RI_TABLE");
    CHECK(r.code == 0);
    CHECK(r.out.find("RI=1.5000") != std::string::npos);
    CHECK(broken.code == ahp::cli::kFileError);
  }
}

TEST_SUITE("exit codes") {
  TEST_CASE("usage errors exit 2") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {},
             {"frobnicate"},
             {"rank"},
             {"rank", fixture(), "--bogus"},
             {"--precision", "40", "rank", fixture()},
             {"ri-simulate", "--order", "2"},
             {"ri-simulate", "--order", "3", "--samples", "0"},
             {"report", fixture(), "--format", "xlsx"},
             {"evaluate", fixture(), "--method", "median"}}) {
      auto r = run_cli(args);
      CHECK_MESSAGE(r.code == ahp::cli::kUsageError, r.err);
      CHECK_FALSE(r.err.empty());
    }
  }

  TEST_CASE("file and parse errors exit 3") {
    TempDir dir;
    auto broken = dir.write("broken.json", "{\"version\": ");
    auto unknown = dir.write("unknown.json", R"({"version": "1.0",
      "hierarchy": {"id": "G", "children": [{"id": "a"}]}, "matrices": {"B9": [[1]]}})");
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"weights", dir.file("missing.json")},
             {"rank", broken},
             {"check", unknown}}) {
      auto r = run_cli(args);
      CHECK(r.code == ahp::cli::kFileError);
      CHECK_FALSE(r.err.empty());
    }
  }

  TEST_CASE("validation errors exit 4") {
    TempDir dir;
    auto bad = dir.write("bad.json", kNonReciprocal);
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"validate", bad}, {"check", bad}, {"rank", bad}, {"weights", fixture(), "--node", "C11"},
             {"weights", fixture(), "--node", "B9"}}) {
      auto r = run_cli(args);
      CHECK(r.code == ahp::cli::kValidationError);
      CHECK_FALSE(r.err.empty());
    }
    auto v = run_cli({"validate", bad});
    CHECK(v.out.find("FAIL") != std::string::npos);
  }

  TEST_CASE("strict scale validation") {
    TempDir dir;
    auto wide = dir.write("wide.json", R"({"version": "1.0",
      "hierarchy": {"id": "G", "children": [{"id": "a"}, {"id": "b"}]},
      "matrices": {"G": [[1, 12], [0.08333333333, 1]]}})");
    CHECK(run_cli({"validate", wide}).code == 0);
    CHECK(run_cli({"validate", wide, "--strict"}).code == ahp::cli::kValidationError);
    CHECK(run_cli({"validate", fixture(), "--strict"}).code == 0);
  }

  TEST_CASE("consistency failures exit 1") {
    TempDir dir;
    auto cyclic = dir.write("cyclic.json", kCyclic);
    auto c = run_cli({"check", cyclic});
    CHECK(c.code == ahp::cli::kConsistencyFailure);
    CHECK(c.out.find("FAIL") != std::string::npos);
    CHECK(run_cli({"evaluate", cyclic}).code == ahp::cli::kConsistencyFailure);
    CHECK(run_cli({"validate", cyclic}).code == 0);
    CHECK(run_cli({"rank", cyclic}).code == 0);
  }

  TEST_CASE("--json-errors is machine readable") {
    TempDir dir;
    auto broken = dir.write("broken.json", "{\n  \"version\": \"1.0\",\n  oops\n}");
    auto bad = dir.write("bad.json", kNonReciprocal);
    struct Case {
      std::vector<std::string> args;
      int code;
    };
    for (const auto& c : std::vector<Case>{{{"--json-errors", "rank", broken}, 3},
                                           {{"--json-errors", "rank", bad}, 4},
                                           {{"--json-errors", "ri-simulate", "--order", "1"}, 2},
                                           {{"--json-errors", "nonsense"}, 2},
                                           {{"--json-errors", "weights", dir.file("none")}, 3}}) {
      auto r = run_cli(c.args);
      CHECK(r.code == c.code);
      auto j = nlohmann::json::parse(r.err);
      CHECK(j["exit_code"] == c.code);
      CHECK(j["code"].is_string());
      CHECK(j["message"].is_string());
    }
    auto j = nlohmann::json::parse(run_cli({"--json-errors", "rank", broken}).err);
    CHECK(j["code"] == "SyntaxError");
    CHECK(j["line"] == 3);
    auto v = nlohmann::json::parse(run_cli({"--json-errors", "rank", bad}).err);
    CHECK(v["code"] == "ReciprocityViolation");
    CHECK(v["node"] == "G");
  }
}

TEST_SUITE("binary") {
  TEST_CASE("identical invocations give identical output") {
    for (const std::string& args : {"rank " + fixture(), "report " + fixture() + " --format csv",
                                   std::string("ri-simulate --order 5 --samples 20000 --seed 3")}) {
      auto a = run_binary(args);
      auto b = run_binary(args);
      CHECK(a.code == 0);
      CHECK(!a.out.empty());
      CHECK(a.out == b.out);
    }
  }

  TEST_CASE("exit status reaches the shell") {
    CHECK(run_binary("weights /nonexistent/missing.json").code == 3);
    CHECK(run_binary("").code == 2);
    CHECK(run_binary("check " + fixture()).code == 0);
  }
}
