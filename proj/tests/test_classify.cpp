#include <catch_amalgamated.hpp>

#include <map>

#include "dpcox/classify.hpp"

using namespace dpcox;

namespace {

DivisorClass cls(int d, std::vector<Coeff> c) { return {d, std::move(c)}; }

std::map<std::string, Verdict> verdicts(Classifier& c, int d) {
  std::map<std::string, Verdict> out;
  for (auto& t : enumerate_types(d)) out[t.name()] = c.classify(t).verdict;
  return out;
}

}  // namespace

TEST_CASE("weyl isometry sends a line to the last exceptional class") {
  for (int d : {6, 4, 2}) {
    for (auto& E : enumerate_classes(d, -1, 1)) {
      auto w = isometry_to_last(E);
      REQUIRE(w.apply(E) == DivisorClass::ell(d, 9 - d));
      REQUIRE(w.apply(anticanonical(d)) == anticanonical(d));
      REQUIRE(w.inverse(w.apply(DivisorClass::ell(d, 0))) == DivisorClass::ell(d, 0));
    }
  }
}

TEST_CASE("contraction targets") {
  // contracting l3 on A1 with three lines: the root meets it, so the target is smooth of degree 7
  auto t = make_type(6, {cls(6, {1, -1, -1, -1})});
  auto c = contract(t, DivisorClass::ell(6, 3));
  REQUIRE(c.target.degree == 7);
  REQUIRE(c.target.simple_twos.empty());
  for (auto& D : {DivisorClass::ell(7, 0), cls(7, {1, -1, 0})}) REQUIRE(c.push(c.pull(D)) == D);
}

TEST_CASE("nef classes agree with filtering all classes") {
  for (int d : {6, 4, 3})
    for (auto& t : enumerate_types(d)) {
      auto N = t.negative_curves();
      std::vector<DivisorClass> ref;
      for (Coeff k = 1; k <= 6; ++k)
        for (Coeff n = 0; n * d <= k * k; ++n)
          for (auto& D : classes_with(d, n, k))
            if (is_nef(D, N)) ref.push_back(D);
      auto got = nef_classes(d, N, 6);
      std::sort(ref.begin(), ref.end());
      std::sort(got.begin(), got.end());
      REQUIRE(got == ref);
    }
}

TEST_CASE("small degree verdicts") {
  Classifier c;
  auto a2 = make_type(6, {cls(6, {0, 1, -1, 0}), cls(6, {0, 0, 1, -1})});
  REQUIRE(a2.ade.str() == "A2");
  auto r = c.classify(a2);
  REQUIRE(r.verdict == Verdict::OneRelation);
  REQUIRE(r.relation_degree);
  REQUIRE(*r.relation_degree == cls(6, {2, -1, -1, 0}));
  REQUIRE(r.generators.size() == 7);

  auto a1 = c.classify(make_type(6, {cls(6, {1, -1, -1, -1})}));
  REQUIRE(a1.verdict == Verdict::OneRelation);
  REQUIRE(*a1.relation_degree == DivisorClass::ell(6, 0));

  REQUIRE(c.classify(make_type(6, {})).verdict == Verdict::Toric);
  REQUIRE(c.classify(make_type(7, {})).verdict == Verdict::Toric);
  REQUIRE(c.classify(make_type(8, {})).generators.size() == 4);
  REQUIRE(c.classify(make_type(9, {})).generators.size() == 3);
}

TEST_CASE("roots given in a non-geometric basis") {
  // -l0+l1+l2+l3 is a Weyl image of the A1 root above
  Classifier c;
  auto t = make_type(6, {cls(6, {-1, 1, 1, 1})});
  auto r = c.classify(t);
  REQUIRE(r.verdict == Verdict::OneRelation);
  auto N = t.negative_curves();
  for (size_t i = 0; i < N.size(); ++i) REQUIRE(r.generators[i] == N[i]);
  Counter cnt(r.generators);
  REQUIRE(cnt.count(*r.relation_degree) == euler_char(*r.relation_degree) + 1);
}

TEST_CASE("per-degree verdicts") {
  Classifier c;
  auto v4 = verdicts(c, 4);
  REQUIRE(v4["A3:5"] == Verdict::OneRelation);
  REQUIRE(v4["A3:4"] == Verdict::MultiRelation);
  auto r = c.classify(*find_type(enumerate_types(4), Ade::parse("A3"), 4));
  REQUIRE(r.reason == MultiReason::CountingSurplus);
  auto v3 = verdicts(c, 3);
  REQUIRE(v3["3A2:3"] == Verdict::Toric);
  REQUIRE(v3["E6:1"] == Verdict::OneRelation);
  REQUIRE(v3["A4:6"] == Verdict::MultiRelation);

  auto d2 = enumerate_types(2);
  auto d6 = c.classify(*find_type(d2, Ade::parse("D6")));
  REQUIRE(d6.verdict == Verdict::MultiRelation);
  REQUIRE(d6.reason == MultiReason::ContractionArgument);
  REQUIRE(d6.detail.find("A5:3") != std::string::npos);
}

TEST_CASE("one relation presentations satisfy the counting lemma") {
  Classifier c;
  for (int d = 6; d >= 3; --d)
    for (auto& t : enumerate_types(d)) {
      auto r = c.classify(t);
      if (r.verdict == Verdict::MultiRelation) continue;
      Counter cnt(r.generators);
      for (auto& D : nef_classes(d, t.negative_curves(), 6)) {
        long long n = cnt.count(D);
        if (r.relation_degree) n -= cnt.count(D - *r.relation_degree);
        REQUIRE(n == euler_char(D));
      }
      if (r.relation_degree) REQUIRE(cnt.count(*r.relation_degree) == euler_char(*r.relation_degree) + 1);
      for (size_t i = r.negative_count; i < r.generators.size(); ++i)
        REQUIRE(is_nef(r.generators[i], t.negative_curves()));
    }
}
