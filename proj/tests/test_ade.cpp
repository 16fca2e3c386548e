#include <catch_amalgamated.hpp>

#include "dpcox/ade.hpp"

using namespace dpcox;

namespace {

// Gram matrix of a graph given by its edge list on n vertices.
std::vector<std::vector<Coeff>> graph(int n, std::vector<std::pair<int, int>> edges) {
  std::vector<std::vector<Coeff>> g(n, std::vector<Coeff>(n, 0));
  for (int i = 0; i < n; ++i) g[i][i] = -2;
  for (auto [a, b] : edges) g[a][b] = g[b][a] = 1;
  return g;
}

std::vector<std::pair<int, int>> path(int from, int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = from; i + 1 < from + n; ++i) e.push_back({i, i + 1});
  return e;
}

}  // namespace

TEST_CASE("labels parse and print canonically") {
  REQUIRE(Ade::parse("A1+A3+A1").str() == "A3+2A1");
  REQUIRE(Ade::parse("A_2+E_6").str() == "E6+A2");
  REQUIRE(Ade::parse("-").str() == "-");
  REQUIRE(Ade::parse("D4+3A1").rank() == 7);
  REQUIRE(Ade::parse("E8").root_count() == 240);
  REQUIRE(Ade::parse("A2+A1").root_count() == 8);
  REQUIRE_THROWS(Ade::parse("D3"));
  REQUIRE_THROWS(Ade::parse("E9"));
  REQUIRE_THROWS(Ade::parse("B2"));
}

TEST_CASE("Dynkin identification from Gram matrices") {
  REQUIRE(identify_ade(graph(4, path(0, 4)))->str() == "A4");
  REQUIRE(identify_ade(graph(4, {{0, 1}, {0, 2}, {0, 3}}))->str() == "D4");
  auto e6 = path(0, 5);
  e6.push_back({2, 5});
  REQUIRE(identify_ade(graph(6, e6))->str() == "E6");
  auto e8 = path(0, 7);
  e8.push_back({2, 7});
  REQUIRE(identify_ade(graph(8, e8))->str() == "E8");
  auto d6 = path(0, 5);
  d6.push_back({1, 5});
  REQUIRE(identify_ade(graph(6, d6))->str() == "D6");
  REQUIRE(identify_ade(graph(3, {}))->str() == "3A1");
  // affine and non-simply-laced shapes
  REQUIRE_FALSE(identify_ade(graph(3, {{0, 1}, {1, 2}, {0, 2}})));
  REQUIRE_FALSE(identify_ade(graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}})));
  auto e9 = path(0, 8);
  e9.push_back({2, 8});
  REQUIRE_FALSE(identify_ade(graph(9, e9)));
  auto g = graph(2, {});
  g[0][1] = g[1][0] = 2;
  REQUIRE_FALSE(identify_ade(g));
}
