#include <catch_amalgamated.hpp>

#include "dpcox/counting.hpp"
#include "dpcox/types.hpp"

using namespace dpcox;

namespace {

DivisorClass cls(int d, std::vector<Coeff> c) { return {d, std::move(c)}; }

// Plain enumeration over exponent boxes, no functional involved.
long long brute_count(const DivisorClass& D, const std::vector<DivisorClass>& g, int maxexp) {
  long long n = 0;
  std::vector<int> e(g.size(), 0);
  while (true) {
    DivisorClass s = DivisorClass::zero(D.degree());
    for (size_t i = 0; i < g.size(); ++i) s += static_cast<Coeff>(e[i]) * g[i];
    if (s == D) ++n;
    size_t i = 0;
    while (i < e.size() && e[i] == maxexp) e[i++] = 0;
    if (i == e.size()) break;
    ++e[i];
  }
  return n;
}

}  // namespace

TEST_CASE("euler characteristic") {
  REQUIRE(euler_char(DivisorClass::zero(4)) == 1);
  REQUIRE(euler_char(anticanonical(3)) == 4);
  REQUIRE(euler_char(DivisorClass::ell(6, 0)) == 3);
  REQUIRE(euler_char(2 * anticanonical(1)) == 4);
  REQUIRE(euler_char(DivisorClass::ell(6, 1)) == 1);
}

TEST_CASE("positive functional") {
  auto w = positive_functional({DivisorClass::ell(8, 1)});
  REQUIRE(intersect(w, DivisorClass::ell(8, 1)) >= 1);

  std::vector<DivisorClass> g{cls(6, {1, -1, -1, -1}), cls(6, {0, 1, 0, 0}), cls(6, {0, 0, 1, 0}),
                              cls(6, {0, 0, 0, 1}), cls(6, {1, 0, 0, 0}), cls(6, {2, -1, -1, -1})};
  std::vector<mpq_class> exact;
  auto wi = positive_functional_rational(g, &exact);
  for (auto& D : g) REQUIRE(intersect(wi, D) >= 1);

  auto x = cls(6, {1, -1, 0, 0});
  REQUIRE_THROWS_AS(positive_functional({x, -x}), infeasible_error);
  REQUIRE_THROWS_AS(positive_functional({}), infeasible_error);
}

TEST_CASE("counting against brute force") {
  std::vector<DivisorClass> g{cls(6, {1, -1, -1, -1}), cls(6, {0, 1, 0, 0}), cls(6, {0, 0, 1, 0}),
                              cls(6, {0, 0, 0, 1}), cls(6, {1, 0, 0, 0})};
  REQUIRE(count_combinations(DivisorClass::ell(6, 0), g) == 2);
  REQUIRE(count_combinations(DivisorClass::ell(6, 1), g) == 1);
  Counter c(g);
  for (Coeff a0 = 0; a0 <= 3; ++a0)
    for (Coeff a1 = -3; a1 <= 1; ++a1)
      for (Coeff a2 = -2; a2 <= 1; ++a2) {
        auto D = cls(6, {a0, a1, a2, -1});
        REQUIRE(c.count(D) == brute_count(D, g, 4));
        REQUIRE(static_cast<long long>(c.monomials(D).size()) == c.count(D));
      }

  // degree 5, A2 with four lines; solving part of the system must agree with the plain loop
  auto t = make_type(5, {cls(5, {0, 1, -1, 0, 0}), cls(5, {0, 0, 1, -1, 0})});
  auto N = t.negative_curves();
  N.push_back(DivisorClass::ell(5, 0));
  Counter cn(N);
  for (Coeff a0 = 0; a0 <= 3; ++a0)
    for (Coeff a1 = -2; a1 <= 1; ++a1)
      for (Coeff a4 = -2; a4 <= 1; ++a4) {
        auto D = cls(5, {a0, a1, -a0, 0, a4});
        REQUIRE(cn.count(D) == brute_count(D, N, 4));
      }
  REQUIRE(cn.count(anticanonical(5)) == brute_count(anticanonical(5), N, 4));
}

TEST_CASE("sections of arbitrary classes") {
  std::vector<DivisorClass> N{cls(6, {1, -1, -1, -1}), cls(6, {0, 1, 0, 0}), cls(6, {0, 0, 1, 0}),
                              cls(6, {0, 0, 0, 1})};
  REQUIRE(h0(DivisorClass::zero(6), N) == 1);
  REQUIRE(h0(DivisorClass::ell(6, 1), N) == 1);
  REQUIRE(h0(-DivisorClass::ell(6, 1), N) == 0);
  REQUIRE(h0(cls(6, {0, 1, -1, 0}), N) == 0);
  REQUIRE(h0(DivisorClass::ell(6, 0), N) == 3);
  REQUIRE(h0(cls(6, {1, -1, -1, -1}), N) == 1);
  REQUIRE(h0(cls(6, {1, 1, 0, 0}), N) == 3);
}
