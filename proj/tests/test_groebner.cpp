#include <catch_amalgamated.hpp>

#include <random>

#include "dpcox/groebner.hpp"

using namespace dpcox;

namespace {

Poly mono(std::vector<int> e, mpq_class c = 1) { return Poly::monomial(e, c); }

}  // namespace

TEST_CASE("trivial reductions") {
  Poly x = Poly::var(2, 0), y = Poly::var(2, 1);
  REQUIRE(groebner_reduce(x * x, {x}).is_zero());
  REQUIRE(groebner_reduce(y, {x}) == y);
  REQUIRE_THROWS(groebner_reduce(y, {}));
}

TEST_CASE("reduced basis of a textbook ideal") {
  // <x^3 - 2xy, x^2 y - 2y^2 + x> under grlex with x > y is <x^2, xy, y^2 - x/2>
  Poly f1 = mono({3, 0}) - mono({1, 1}, 2);
  Poly f2 = mono({2, 1}) - mono({0, 2}, 2) + mono({1, 0});
  auto G = groebner_basis({f1, f2});
  REQUIRE(G.size() == 3);
  std::vector<Poly> want{mono({2, 0}), mono({1, 1}), mono({0, 2}) - mono({1, 0}, mpq_class(1, 2))};
  for (auto& w : want) REQUIRE(std::find(G.begin(), G.end(), w) != G.end());
  REQUIRE(groebner_reduce(mono({5, 3}) + mono({1, 1}), {f1, f2}).is_zero());
  REQUIRE(groebner_reduce(Poly::var(2, 1), {f1, f2}) == Poly::var(2, 1));
}

TEST_CASE("quartic del Pezzo with a D5 point contains the line x0=x2=x3=0") {
  auto x = [](int i) { return Poly::var(5, i); };
  Poly F1 = x(0) * x(1) - x(2) * x(2);
  Poly F2 = x(3) * x(3) + x(0) * x(4) + x(1) * x(2);
  std::vector<Poly> line{x(0), x(2), x(3)};
  REQUIRE(groebner_reduce(F1, line).is_zero());
  REQUIRE(groebner_reduce(F2, line).is_zero());
  // x1 = x3 = 0 is not contained
  REQUIRE_FALSE(groebner_reduce(F1, {x(1), x(3)}).is_zero());
}

TEST_CASE("caps raise a resource error") {
  Poly f1 = mono({3, 0}) - mono({1, 1}, 2);
  Poly f2 = mono({2, 1}) - mono({0, 2}, 2) + mono({1, 0});
  GroebnerCaps tiny;
  tiny.max_basis = 2;
  REQUIRE_THROWS_AS(groebner_basis({f1, f2}, tiny), resource_error);
}

TEST_CASE("principal ideals: Groebner membership agrees with exact division") {
  std::mt19937 rng(11);
  auto rnd = [&](int n, int deg, int terms) {
    Poly p(n);
    for (int t = 0; t < terms; ++t) {
      Exps e(n, 0);
      for (int k = 0; k < deg; ++k) e[rng() % n] += static_cast<int>(rng() % 2);
      p.add_term(e, static_cast<long>(rng() % 5) - 2);
    }
    return p;
  };
  int members = 0;
  for (int it = 0; it < 100; ++it) {
    const int n = 2 + static_cast<int>(rng() % 3);
    Poly R = rnd(n, 3, 3);
    if (R.is_zero()) continue;
    Poly F = (it % 2) ? rnd(n, 3, 3) * R : rnd(n, 5, 4);
    bool div = exact_divide(F, R).has_value();
    bool mem = groebner_reduce(F, {R}).is_zero();
    REQUIRE(div == mem);
    members += div;
  }
  REQUIRE(members > 20);
}
