#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "mellin/commands.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + MELLIN_BIN + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "mellin_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("root: all methods agree on the golden ratio") {
  const Run r = run("--json --no-timing root --n 2 --exps 1 --coeffs 1 --method all");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["command"] == "root");
  int values = 0, checks = 0;
  for (const auto& e : j["results"]) {
    CHECK(e.contains("method"));
    CHECK(e.contains("error_estimate"));
    CHECK(e.contains("pass") == e.contains("tolerance"));
    if (e["name"] == "Z^alpha") {
      ++values;
      CHECK(std::abs(e["value"].get<double>() - 0.6180339887) < 1e-9);
    } else {
      ++checks;
      CHECK(e["pass"] == true);
    }
  }
  CHECK(values == 3);
  CHECK(checks == 3);
  CHECK_FALSE(j.contains("timing"));
}

TEST_CASE("root: zero coefficients give 1 and skip the integral") {
  const Run r = run("--json root --n 5 --exps 4,3,2,1 --coeffs 0,0,0,0 --method all");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["results"][0]["value"] == 1.0);
  CHECK(j["inputs"]["skipped"][0] == "mb");
  CHECK(j.contains("timing"));
}

TEST_CASE("root: integral method matches the parametric root") {
  const Run mb = run("--json root --n 3 --exps 2,1 --coeffs 0.3,0.4 --method mb --alpha 1");
  const Run pr = run("--json root --n 3 --exps 2,1 --coeffs 0.3,0.4 --method param");
  REQUIRE(mb.code == 0);
  REQUIRE(pr.code == 0);
  const double a = json::parse(mb.out)["results"][0]["value"];
  const double b = json::parse(pr.out)["results"][0]["value"];
  CHECK(std::abs(a - b) < 1e-6);
}

TEST_CASE("root: bad input exits 2, numerical failure exits 3") {
  CHECK(run("root --n 3 --exps 1,2 --coeffs 1,1").code == 2);
  CHECK(run("root --n 3 --exps 2,1 --coeffs 1").code == 2);
  CHECK(run("root --n 3 --exps 2,1 --coeffs 1,-1").code == 2);
  CHECK(run("root --n 2 --exps 1 --coeffs 1 --method nope").code == 2);
  CHECK(run("root --n 2 --exps 1 --coeffs abc").code == 2);
  CHECK(run("nosuchcommand").code == 2);
  const Run bad = run("--json root --n 3 --exps 2,1 --coeffs 1,1", "MELLIN_TOL=banana");
  CHECK(bad.code == 2);
  // a tolerance the integral cannot reach within its node budget
  const Run hard = run("--json root --n 3 --exps 2,1 --coeffs 0.3,0.4 --method mb --tol 1e-30");
  CHECK(hard.code == 3);
  CHECK(json::parse(hard.out).contains("error"));
}

TEST_CASE("root: tolerance defaults from the environment") {
  const Run r = run("--json root --n 2 --exps 1 --coeffs 1", "MELLIN_TOL=1e-5");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["inputs"]["tol"] == 1e-5);
  const Run flag = run("--json root --n 2 --exps 1 --coeffs 1 --tol 1e-7", "MELLIN_TOL=1e-5");
  CHECK(json::parse(flag.out)["inputs"]["tol"] == 1e-7);
}

TEST_CASE("root: batch input from a JSON file") {
  const fs::path batch = scratch("batch.json");
  std::ofstream(batch) << R"([{"n": 2, "exps": [1], "coeffs": [1.5]},
                             {"n": 3, "exps": [2, 1], "coeffs": [0.3, 0.4], "method": "oracle", "alpha": 2}])";
  const Run r = run("--json root --spec " + batch.string());
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(std::abs(j[0]["results"][0]["value"].get<double>() - 0.5) < 1e-15);
  CHECK(j[1]["results"][0]["method"] == "oracle");

  std::ofstream(batch) << "{ not json";
  CHECK(run("root --spec " + batch.string()).code == 2);
  CHECK(run("root --spec /nonexistent/file.json").code == 2);
}

TEST_CASE("verify: suites pass and reports are deterministic") {
  const Run det = run("--json --no-timing verify --suite det --count 1000");
  REQUIRE(det.code == 0);
  const json j = json::parse(det.out);
  CHECK(j["results"][0]["detail"]["failures"] == 0);
  CHECK(j["results"][0]["detail"]["instances"] == 1000);

  const Run a = run("--json --no-timing verify --suite jacobian --seed 42 --count 50");
  const Run b = run("--json --no-timing verify --suite jacobian --seed 42 --count 50");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(run("verify --suite bogus").code == 2);
}

TEST_CASE("verify: failures carry a replay command") {
  // an impossible tolerance forces failures
  const Run r = run("--json --no-timing verify --suite jacobian --seed 3 --count 3 --tol 1e-30");
  CHECK(r.code == 1);
  const json j = json::parse(r.out);
  REQUIRE(j["failures"].size() == 3);
  const std::string replay = j["failures"][1]["replay"];
  CHECK(replay.find("--suite jacobian") != std::string::npos);
  CHECK(replay.find("--seed 3") != std::string::npos);
  CHECK(replay.find("--index 1") != std::string::npos);

  // replaying reproduces the same instance
  const Run again = run("--json --no-timing " + replay.substr(replay.find("verify")));
  CHECK(again.code == 1);
  const json k = json::parse(again.out);
  CHECK(k["failures"][0]["params"] == j["failures"][1]["params"]);
}

TEST_CASE("contour-trace: row count and conjugate symmetry") {
  const fs::path csv = scratch("trace.csv");
  const Run r = run("contour-trace --n 2 --exps 1 --coeffs 1 --height 30 --nodes 601 --out " + csv.string());
  REQUIRE(r.code == 0);
  std::ifstream in(csv);
  std::string header, line;
  std::getline(in, header);
  CHECK(header == "im_u1,re,im,abs");
  std::vector<std::array<double, 4>> rows;
  while (std::getline(in, line)) {
    std::array<double, 4> v{};
    std::stringstream ss(line);
    char comma;
    ss >> v[0] >> comma >> v[1] >> comma >> v[2] >> comma >> v[3];
    rows.push_back(v);
  }
  REQUIRE(rows.size() == 601);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& m = rows[rows.size() - 1 - k];
    REQUIRE(rows[k][0] == doctest::Approx(-m[0]));
    REQUIRE(rows[k][1] == doctest::Approx(m[1]).epsilon(1e-12));
    REQUIRE(rows[k][2] == doctest::Approx(-m[2]).epsilon(1e-12));
  }
  CHECK(run("contour-trace --n 2 --exps 1 --coeffs 1 --out /nonexistent/dir/x.csv").code == 3);
  CHECK(run("contour-trace --n 4 --exps 3,2,1 --coeffs 1,1,1").code == 2);
}

TEST_CASE("contour-trace: two-line grid to stdout") {
  const Run r = run("contour-trace --n 3 --exps 2,1 --coeffs 0.3,0.4 --height 5 --nodes 11");
  REQUIRE(r.code == 0);
  std::stringstream ss(r.out);
  std::string line;
  std::getline(ss, line);
  CHECK(line == "im_u1,im_u2,re,im,abs");
  int rows = 0;
  while (std::getline(ss, line)) ++rows;
  CHECK(rows == 121);
}

TEST_CASE("series: coefficients and comparison") {
  const Run r = run("--json series --n 2 --exps 1 --kmax 4");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j["results"].size() == 5);
  CHECK(j["results"][0]["value"] == 1.0);
  CHECK(std::abs(j["results"][1]["value"].get<double>() + 0.5) < 1e-15);
  const Run cmp = run("--json series --n 3 --exps 1 --kmax 10 --x 0.1");
  CHECK(cmp.code == 0);
  CHECK(run("series --n 3 --exps 2,1").code == 2);
}

TEST_CASE("report invariants") {
  using namespace mellin::cli;
  RunReport rep;
  rep.command = "x";
  rep.results.push_back(ResultEntry::measured("a", "m", 1.0, 0.1));
  CHECK(rep.all_passed());
  rep.results.push_back(ResultEntry::checked("b", "m", 1.0, 0.1, 1e-3, false));
  CHECK_FALSE(rep.all_passed());
  const nlohmann::json j = rep.to_json(false);
  CHECK_FALSE(j["results"][0].contains("pass"));
  CHECK(j["results"][1]["pass"] == false);
}
