#include <catch_amalgamated.hpp>

#include <map>
#include <set>
#include <sstream>

#include "dpcox/catalog.hpp"

using namespace dpcox;

namespace {

const Catalog& bundled() {
  static const Catalog c = load_catalog_file(DPCOX_DEFAULT_CATALOG);
  return c;
}

std::string read_file(const std::string& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string load_error(const std::string& text) {
  std::istringstream in(text);
  try {
    load_catalog(in);
  } catch (const catalog_error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("bundled catalog contents") {
  auto& cat = bundled();
  REQUIRE(cat.cases.size() == 36);
  REQUIRE(cat.toric_types.size() == 16);
  std::set<std::string> ids;
  std::map<std::pair<int, std::string>, int> per_type;
  for (auto& c : cat.cases) {
    REQUIRE(ids.insert(c.id).second);
    per_type[{c.degree, c.ade}]++;
    REQUIRE(c.num_generators() == 13 - c.degree);
  }
  REQUIRE(per_type.size() == 30);
  const std::set<std::pair<int, std::string>> twice{{3, "D4"}, {2, "D5+A1"}, {2, "E6"}, {1, "E6+A2"}, {1, "E7+A1"}, {1, "E8"}};
  for (auto& [k, n] : per_type) REQUIRE(n == (twice.count(k) ? 2 : 1));
  REQUIRE(std::is_sorted(cat.cases.begin(), cat.cases.end(), [](auto& a, auto& b) { return a.id < b.id; }));
  int lam = 0;
  for (auto& c : cat.cases) lam += c.lambda.has_value();
  REQUIRE(lam == 10);
}

TEST_CASE("schema violations name the offending field") {
  const std::string text = read_file(DPCOX_DEFAULT_CATALOG);
  REQUIRE(load_error(text.substr(0, text.size() / 2)).find("parse error") != std::string::npos);
  REQUIRE(load_error(R"({"schema": 2, "cases": [], "toric_types": []})").find("/schema") != std::string::npos);
  REQUIRE(load_error(R"({"schema": 1, "cases": [], "toric_types": [], "extra": 1})").find("/extra: unknown field") !=
          std::string::npos);
  auto j = nlohmann::json::parse(text);
  j["cases"][3]["relation"][0][1].push_back(0);
  REQUIRE(load_error(j.dump()).find("/cases/3/relation/0/1") != std::string::npos);
  j = nlohmann::json::parse(text);
  j["cases"][0]["colour"] = "red";
  REQUIRE(load_error(j.dump()).find("/cases/0/colour") != std::string::npos);
  j = nlohmann::json::parse(text);
  j["cases"][5]["id"] = j["cases"][4]["id"];
  REQUIRE(load_error(j.dump()).find("duplicate id") != std::string::npos);
}

TEST_CASE("E6 cubic and E7 double plane pass every check") {
  for (const char* id : {"d3-E6", "d2-E7"}) {
    auto* c = bundled().find(id);
    REQUIRE(c);
    auto rep = verify_case(*c);
    REQUIRE(rep.checks.size() == 10);
    for (auto& k : rep.checks) {
      INFO(id << " check " << k.number << ": " << k.message);
      REQUIRE(k.ok);
    }
  }
}

TEST_CASE("a flipped relation coefficient is caught by the division check") {
  auto* c = bundled().find("d3-E6");
  for (size_t k = 0; k < c->relation.size(); ++k) {
    auto m = mutate_relation(*c, k);
    REQUIRE_FALSE(m.relation == c->relation);
    auto rep = verify_case(m);
    REQUIRE_FALSE(rep.check(5).ok);
    REQUIRE(rep.check(3).ok);
  }
}

TEST_CASE("the two D4 cubics verify only against their own relation") {
  auto *a = bundled().find("d3-D4-1"), *b = bundled().find("d3-D4-2");
  REQUIRE(a);
  REQUIRE(b);
  REQUIRE(a->relation.size() == 4);
  REQUIRE(b->relation.size() == 3);
  REQUIRE(detail::check_equations(*a).ok);
  REQUIRE(detail::check_equations(*b).ok);
  auto swapped = *a;
  swapped.relation = b->relation;
  REQUIRE_FALSE(detail::check_equations(swapped).ok);
  swapped = *b;
  swapped.relation = a->relation;
  REQUIRE_FALSE(detail::check_equations(swapped).ok);
}

TEST_CASE("lambda variants pass the polynomial checks") {
  int seen = 0;
  for (auto& c : bundled().cases) {
    if (!c.lambda) continue;
    ++seen;
    for (auto* f : {detail::check_relation_degree, detail::check_monomial_count, detail::check_pullbacks,
                    detail::check_equations, detail::check_identities, detail::check_points, detail::check_roundtrip}) {
      auto r = f(c);
      INFO(c.id << ": " << r.message);
      REQUIRE(r.ok);
    }
  }
  REQUIRE(seen == 10);
}

TEST_CASE("anticanonical monomials split along the relation") {
  // count(-K) = euler(-K) + count(-K - D0) on every catalog case
  for (auto& c : bundled().cases) {
    Counter counter(c.generators);
    const auto K = anticanonical(c.degree);
    long long lhs = counter.count(K);
    long long rhs = euler_char(K) + counter.count(K - c.relation_degree);
    INFO(c.id);
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("pullbacks sit in degree -w K") {
  for (auto& c : bundled().cases) {
    for (size_t i = 0; i < c.pullbacks.size(); ++i) {
      INFO(c.id << " x" << i);
      REQUIRE(graded_degree(c.pullbacks[i], c.generators) ==
              static_cast<Coeff>(c.weights[i]) * anticanonical(c.degree));
    }
  }
}
