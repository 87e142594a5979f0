// End-to-end checks of the command-line tool: exit-code contract, report
// shapes, and determinism, driving the real binary through std::system.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include <sys/wait.h>

using nlohmann::json;

namespace {

const std::string kCli = STARDEV_CLI_PATH;
const std::string kDir = STARDEV_TEST_DIR;

int run(const std::string& args) {
  std::string cmd = kCli + " " + args + " > " + kDir + "/cli_stdout.txt 2> " +
                    kDir + "/cli_stderr.txt";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json run_json(const std::string& args, int expect_code = 0) {
  int code = run(args);
  CAPTURE(slurp(kDir + "/cli_stderr.txt"));
  REQUIRE(code == expect_code);
  return json::parse(slurp(kDir + "/cli_stdout.txt"));
}

struct WorkspaceFixture {
  std::string path = kDir + "/cli_ws.json";
  WorkspaceFixture() {
    std::ofstream out(path);
    out << R"({
      "spaces": {"fair2": {"probs": [0.5, 0.5]}},
      "variables": {"z": {"space": "fair2", "values": [-1.0, 1.0]}},
      "functionals": {"mixed": {"add": ["iqd@0.4", "sd"]}},
      "gfamilies": {"zero": {"alpha_grid": [0.25, 0.5, 0.75],
                              "curves": [[0, 0, 0]],
                              "star_closed": true},
                     "fine": {"alpha_grid": [0.0625, 0.125, 0.25, 0.5, 0.75],
                              "curves": [[1, 1, 0.5, 0.25, 0], [2, 1.5, 1, 0.5, 0.5]],
                              "star_closed": true}}
    })";
  }
};

}  // namespace

TEST_CASE("measure evaluates catalog and workspace functionals") {
  WorkspaceFixture ws;
  json doc = run_json("--workspace " + ws.path +
                      " measure --var z --functional sd --functional mixed "
                      "--functional chi_const");
  const json& table = doc["results"]["table"];
  REQUIRE(table.size() == 3);
  CHECK(table[0]["value"] == 1.0);
  CHECK(table[1]["value"] == 3.0);
  CHECK(table[2]["value"] == "inf");
  CHECK(doc["tool"] == "stardev");
}

TEST_CASE("exit codes follow the contract") {
  WorkspaceFixture ws;
  CHECK(run("--workspace " + ws.path + " measure --var ghost --functional sd") == 2);
  CHECK(run("--workspace " + ws.path + " measure --var z --functional nope") == 2);
  CHECK(run("measure --var z --functional sd") == 2);  // no workspace at all
  CHECK(run("counterexample --n 11") == 2);
  CHECK(run("counterexample --n 2000 --alpha 0.9") == 2);
  CHECK(run("definitely-not-a-subcommand") == 2);

  std::ofstream bad(kDir + "/cli_bad.json");
  bad << "{ nope";
  bad.close();
  CHECK(run("--workspace " + kDir + "/cli_bad.json measure --var z --functional sd") == 3);

  // grid floor above the smallest atom probability: numerical precondition
  std::ofstream coarse(kDir + "/cli_coarse.json");
  coarse << R"({
    "spaces": {"skew": {"probs": [0.125, 0.875]}},
    "variables": {"x": {"space": "skew", "values": [0.0, 1.0]}},
    "gfamilies": {"g": {"alpha_grid": [0.25, 0.5], "curves": [[0, 0]],
                         "star_closed": true}}
  })";
  coarse.close();
  CHECK(run("--workspace " + kDir + "/cli_coarse.json dual --gfamily g --var x --kind var") == 4);
}

TEST_CASE("audit reports classify the composite") {
  json doc = run_json("--seed 9 audit --functional iqd2+sd@0.4 "
                      "--n-variables 60 --n-pairs 40");
  const json& report = doc["results"]["report"];
  bool star = false, convex = false;
  for (const auto& label : report["classification"]) {
    star |= label == "Star-Shaped";
    convex |= label == "Convex";
  }
  CHECK(star);
  CHECK_FALSE(convex);
  bool convexity_failed = false;
  for (const auto& check : report["checks"])
    if (check["axiom"] == "convexity")
      convexity_failed = check["status"] == "fail" && !check["witnesses"].empty();
  CHECK(convexity_failed);
}

TEST_CASE("counterexample command") {
  json doc = run_json("counterexample --n 2000 --alpha 0.4");
  const json& b = doc["results"]["bundle"];
  CHECK(b["same_dist_ok"] == true);
  CHECK(b["convex_order_ok"] == true);
  CHECK(b["inequality_ok"] == true);
  CHECK(std::abs(b["d_z"].get<double>() - 3.0) <= 1e-9);
}

TEST_CASE("envelope command reports exact attainment") {
  json doc = run_json("--seed 5 envelope --functional iqd2+sd@0.4 "
                      "--variant star --pool 12");
  CHECK(doc["results"]["attainment_max_residual"] == 0.0);
  CHECK(doc["results"]["domination_passes"] == 12);
  CHECK(doc["results"]["envelopes"].size() == 12);
  CHECK(run("envelope --functional abs_first --variant star") == 2);

  json cone = run_json("--seed 5 envelope --functional iqd@0.4 "
                       "--variant cone --pool 8");
  CHECK(cone["results"]["domination_passes"] == 8);

  json lrd = run_json("--seed 5 envelope --functional sd --variant lrd --pool 8");
  CHECK(lrd["results"]["max_excess_over_lower_range"].get<double>() <= 1e-10);
}

TEST_CASE("audit classifications through the CLI") {
  json sd_doc = run_json("--seed 3 audit --functional sd "
                         "--n-variables 60 --n-pairs 40");
  bool generalized = false;
  for (const auto& label : sd_doc["results"]["report"]["classification"])
    generalized |= label == "generalized";
  CHECK(generalized);

  json fr_doc = run_json("--seed 3 audit --functional fr "
                         "--n-variables 60 --n-pairs 40");
  bool lrd_failed = false;
  for (const auto& check : fr_doc["results"]["report"]["checks"])
    if (check["axiom"] == "lower_range_dominance")
      lrd_failed = check["status"] == "fail" && !check["witnesses"].empty();
  CHECK(lrd_failed);
}

TEST_CASE("dual command matches lower_range for the zero family") {
  WorkspaceFixture ws;
  json doc = run_json("--workspace " + ws.path +
                      " dual --gfamily zero --var z --kind var");
  CHECK(doc["results"]["table"][0]["value"] == 1.0);  // LR of (-1,1) fair
  json es = run_json("--workspace " + ws.path +
                     " dual --gfamily zero --var z --kind es");
  CHECK(es["results"]["table"][0]["value"] == 1.0);
  // the coarse grid admits no audit corpus
  CHECK(es["results"]["audit"].is_string());

  json fine = run_json("--workspace " + ws.path +
                       " dual --gfamily fine --var z --kind es");
  REQUIRE(fine["results"]["audit"].is_array());
  for (const auto& check : fine["results"]["audit"]) {
    CAPTURE(check["axiom"]);
    if (check["axiom"] == "convex_order_consistency")
      CHECK(check["status"] == "not-applicable");  // grid stops above 1/100
    else
      CHECK(check["status"] == "pass");
  }
}

TEST_CASE("ingest then measure") {
  std::string csv_path = kDir + "/cli_data.csv";
  std::ofstream csv(csv_path);
  csv << "date,ret\na,1.0\nb,3.0\n";
  csv.close();
  std::string ws_path = kDir + "/cli_ingest_ws.json";
  std::remove(ws_path.c_str());

  json doc = run_json("--workspace " + ws_path + " ingest --csv " + csv_path +
                      " --column ret --as rets");
  CHECK(doc["results"]["atoms"] == 2);
  json m = run_json("--workspace " + ws_path +
                    " measure --var rets --functional lr");
  CHECK(m["results"]["table"][0]["value"] == 1.0);

  std::ofstream bad(csv_path);
  bad << "date,ret\na,1.0\nb,oops\n";
  bad.close();
  CHECK(run("--workspace " + ws_path + " ingest --csv " + csv_path +
            " --column ret --as rets2") == 3);
}

TEST_CASE("identical invocations give identical bodies modulo the timestamp") {
  const std::string args =
      "--seed 31 audit --functional iqd@0.4 --n-variables 50 --n-pairs 30";
  auto body = [&]() {
    json j = json::parse(slurp(kDir + "/cli_stdout.txt"));
    j.erase("timestamp");
    return j.dump();
  };
  REQUIRE(run(args) == 0);
  std::string first = body();
  REQUIRE(run(args) == 0);
  CHECK(first == body());
}

TEST_CASE("workspace path falls back to the environment variable") {
  WorkspaceFixture ws;
  std::string cmd = "STARDEV_WORKSPACE=" + ws.path + " " + kCli +
                    " measure --var z --functional sd > " + kDir +
                    "/cli_stdout.txt 2> " + kDir + "/cli_stderr.txt";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WEXITSTATUS(status) == 0);
  json doc = json::parse(slurp(kDir + "/cli_stdout.txt"));
  CHECK(doc["results"]["table"][0]["value"] == 1.0);
}

TEST_CASE("--out writes the report to a file") {
  WorkspaceFixture ws;
  std::string out = kDir + "/cli_out_report.json";
  std::remove(out.c_str());
  CHECK(run("--workspace " + ws.path + " --out " + out +
            " measure --var z --functional sd") == 0);
  json doc = json::parse(slurp(out));
  CHECK(doc["results"]["table"][0]["value"] == 1.0);
  CHECK(slurp(kDir + "/cli_stdout.txt").empty());
}

TEST_CASE("csv format renders flat key,value rows") {
  int code = run("--format csv counterexample --n 10");
  CHECK(code == 0);
  std::string out = slurp(kDir + "/cli_stdout.txt");
  CHECK(out.rfind("key,value", 0) == 0);
  CHECK(out.find("results.bundle.inequality_ok,true") != std::string::npos);
}
