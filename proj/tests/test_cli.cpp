#include <catch_amalgamated.hpp>

#include <nlohmann/json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sys/wait.h>

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " DPCOX_CLI_PATH " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string temp_path(const std::string& name) { return std::string(P_tmpdir) + "/dpcox_test_" + name; }

}  // namespace

TEST_CASE("count table through the command line") {
  auto r = run("report --table2 --format json");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  const std::vector<std::array<int, 4>> want{{9, 1, 0, 0}, {8, 3, 0, 0}, {7, 2, 0, 0}, {6, 4, 2, 0},
                                             {5, 2, 4, 1}, {4, 3, 7, 6}, {3, 1, 7, 13}};
  for (size_t i = 0; i < want.size(); ++i) {
    auto& row = j["table2"][i];
    REQUIRE(row["degree"] == want[i][0]);
    REQUIRE(row["toric"] == want[i][1]);
    REQUIRE(row["one_relation"] == want[i][2]);
    REQUIRE(row["multi_relation"] == want[i][3]);
  }
  REQUIRE(j["table2"][7]["one_relation"] == 7);
  REQUIRE(j["table2"][8]["one_relation"] == 3);
  REQUIRE(j["table2"][8]["assumption_dependent"] == true);
  // byte-identical reruns
  REQUIRE(run("report --table2 --format json").out == r.out);
  auto t = run("report --table2");
  REQUIRE(t.code == 0);
  REQUIRE(t.out.find("assumption-dependent") != std::string::npos);
}

TEST_CASE("classify a single type") {
  auto r = run("classify --degree 5 --type A3 --format json");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  REQUIRE(j.size() == 1);
  REQUIRE(j[0]["verdict"] == "one relation");
  // 2l0 minus two exceptional classes, up to relabelling
  REQUIRE(std::regex_match(j[0]["relation_degree"].get<std::string>(), std::regex("2l0-l[1-4]-l[1-4]")));

  REQUIRE(run("classify --degree 4 --type A3").code == 2);
  REQUIRE(json::parse(run("classify --degree 4 --type A3:5 --format json").out)[0]["verdict"] == "one relation");
  auto m = json::parse(run("classify --degree 4 --type A3:4 --format json").out);
  REQUIRE(m[0]["verdict"] == ">=2 relations");
  REQUIRE(run("classify --degree 4 --type Q7").code == 2);
  REQUIRE(run("classify --degree 9").code == 2);
}

TEST_CASE("table and json agree on classify output") {
  auto j = json::parse(run("classify --degree 6 --format json").out);
  auto t = run("classify --degree 6").out;
  REQUIRE(j.size() == 6);
  for (auto& row : j) {
    auto line = "degree 6  " + row["type"].get<std::string>() + "  (" + std::to_string(row["lines"].get<int>()) +
                " lines): " + row["verdict"].get<std::string>();
    REQUIRE(t.find(line) != std::string::npos);
  }
}

TEST_CASE("verify exit codes") {
  auto ok = run("verify --case d3-E6 --format json");
  REQUIRE(ok.code == 0);
  auto j = json::parse(ok.out);
  REQUIRE(j["passed"] == 1);
  REQUIRE(j["cases"][0]["checks"].size() == 10);
  REQUIRE(run("verify").code == 2);
  REQUIRE(run("verify --case d9-nothing").code == 2);
  REQUIRE(run("verify --case d3-E6 --catalog /nonexistent.json").code == 2);
  REQUIRE(run("frobnicate").code == 2);
  REQUIRE(run("report --table2 --format xml").code == 2);

  auto lam = json::parse(run("verify --case d2-E6-l0 --case d2-E6-l1 --lambda 1 --format json").out);
  REQUIRE(lam["total"] == 1);
  REQUIRE(lam["cases"][0]["id"] == "d2-E6-l1");
}

TEST_CASE("a mutated catalog fails check 5") {
  std::ifstream in(DPCOX_DEFAULT_CATALOG);
  auto cat = json::parse(in);
  for (auto& c : cat["cases"])
    if (c["id"] == "d3-E6") c["relation"][0][0] = "2";
  const auto path = temp_path("mutated.json");
  std::ofstream(path) << cat.dump();
  auto r = run("verify --case d3-E6 --format json --catalog " + path);
  REQUIRE(r.code == 1);
  auto j = json::parse(r.out);
  REQUIRE(j["cases"][0]["checks"][4]["ok"] == false);
  REQUIRE(j["cases"][0]["checks"][2]["ok"] == true);
  // the environment variable selects the default catalog
  REQUIRE(run("verify --case d3-E6", "DPCOX_CATALOG=" + path).code == 1);
  std::remove(path.c_str());
}

TEST_CASE("enumerate lists the degree 4 types") {
  auto r = run("enumerate --degree 4 --format json");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  REQUIRE(j.size() == 16);
  int a3 = 0;
  for (auto& t : j) a3 += t["ade"] == "A3";
  REQUIRE(a3 == 2);
}
