#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "counting.hpp"
#include "lattice.hpp"
#include "types.hpp"

namespace dpcox {

enum class Verdict { Toric, OneRelation, MultiRelation };
enum class MultiReason { None, TooManyNegativeCurves, ContractionArgument, CountingSurplus };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Toric: return "toric";
    case Verdict::OneRelation: return "one relation";
    case Verdict::MultiRelation: return ">=2 relations";
  }
  return "?";
}

inline std::string to_string(MultiReason r) {
  switch (r) {
    case MultiReason::None: return "";
    case MultiReason::TooManyNegativeCurves: return "too many negative curves";
    case MultiReason::ContractionArgument: return "contraction argument";
    case MultiReason::CountingSurplus: return "counting surplus";
  }
  return "?";
}

struct Classification {
  Verdict verdict = Verdict::Toric;
  MultiReason reason = MultiReason::None;
  // negative curves first, then nef generator degrees in scan order
  std::vector<DivisorClass> generators;
  size_t negative_count = 0;
  std::optional<DivisorClass> relation_degree;
  bool assumption_dependent = false;
  std::string detail;

  std::vector<DivisorClass> nef_generators() const {
    return {generators.begin() + static_cast<long>(negative_count), generators.end()};
  }
};

struct inconclusive_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Product of reflections, applied in order.
struct Isometry {
  std::vector<DivisorClass> roots;
  DivisorClass apply(DivisorClass D) const {
    for (const auto& a : roots) D = reflect(a, D);
    return D;
  }
  DivisorClass inverse(DivisorClass D) const {
    for (auto it = roots.rbegin(); it != roots.rend(); ++it) D = reflect(*it, D);
    return D;
  }
};

// Weyl group element sending a (-1)-class to l_r (needs r >= 3 unless E is already some l_i).
inline Isometry isometry_to_last(const DivisorClass& E) {
  const int d = E.degree(), r = 9 - d;
  Isometry w;
  DivisorClass cur = E;
  for (int guard = 0; guard < 1000; ++guard) {
    if (cur == DivisorClass::ell(d, r)) return w;
    DivisorClass a = DivisorClass::zero(d);
    if (cur[0] == 0) {
      int i = 1;
      while (i <= r && cur[i] != 1) ++i;
      if (i > r) break;
      a[i] = 1;
      a[r] = -1;
    } else {
      if (r < 3) break;
      std::vector<int> idx(r);
      for (int i = 0; i < r; ++i) idx[i] = i + 1;
      std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return cur[x] < cur[y]; });
      a[0] = 1;
      for (int k = 0; k < 3; ++k) a[idx[k]] = -1;
    }
    w.roots.push_back(a);
    cur = reflect(a, cur);
  }
  throw std::logic_error("no Weyl isometry moves " + E.str() + " to the last exceptional class");
}

inline DivisorClass drop_last(const DivisorClass& D) {
  auto c = D.coeffs();
  if (c.back() != 0) throw std::logic_error("class does not descend: " + D.str());
  c.pop_back();
  return {D.degree() + 1, c};
}

inline DivisorClass append_zero(const DivisorClass& D) {
  auto c = D.coeffs();
  c.push_back(0);
  return {D.degree() - 1, c};
}

// Contraction of a (-1)-curve E: the target type and the maps between the lattices.
struct Contraction {
  DivisorClass E;
  Isometry w;
  SurfaceType target;
  std::vector<DivisorClass> basis;  // target basis in pushed-forward coordinates
  DivisorClass push(const DivisorClass& C) const { return drop_last(w.apply(C + intersect(C, E) * E)); }
  DivisorClass pull(const DivisorClass& D) const {
    DivisorClass x = DivisorClass::zero(D.degree());
    for (int k = 0; k < D.rank(); ++k) x += D[k] * basis[k];
    return w.inverse(append_zero(x));
  }
};

inline Contraction contract(const SurfaceType& t, const DivisorClass& E) {
  Contraction c{E, isometry_to_last(E), {}, {}};
  std::vector<DivisorClass> twos;
  for (const auto& a : t.simple_twos)
    if (intersect(a, E) == 0) twos.push_back(c.push(a));
  c.target = normalize_type(make_type(t.degree + 1, twos), &c.basis);
  return c;
}

inline bool is_nef(const DivisorClass& D, const std::vector<DivisorClass>& negative_curves) {
  for (const auto& N : negative_curves)
    if (intersect(D, N) < 0) return false;
  return true;
}

// Nef classes with 1 <= (D,-K) <= bound, ordered by ((D,-K), coefficients).
// Nef classes with 1 <= (D,-K) <= bound, ordered by ((D,-K), coefficients).
// Assumes l0 is a pulled-back line and the li are effective (see normalize_type): then a nef
// D = a0 l0 - sum ai li has 0 <= ai, ai + aj <= a0 and D^2 >= 0.
inline std::vector<DivisorClass> nef_classes(int degree, const std::vector<DivisorClass>& negative_curves, int bound) {
  const int r = 9 - degree;
  std::vector<DivisorClass> out;
  std::vector<Coeff> cur(r + 1, 0);
  // remaining coordinates i..r sum to s with squares at most q; top is the largest ai so far
  auto dfs = [&](auto&& self, int i, Coeff a0, Coeff s, Coeff q, Coeff top) -> void {
    const Coeff m = r - i + 1;
    if (m == 0) {
      if (s == 0) {
        DivisorClass D(degree, cur);
        if (is_nef(D, negative_curves)) out.push_back(D);
      }
      return;
    }
    const Coeff cap = std::min(a0, a0 - top);
    if (s < 0 || s > m * cap || s * s > m * q) return;
    for (Coeff v = 0; v <= cap && v <= s && v * v <= q; ++v) {
      cur[i] = -v;
      self(self, i + 1, a0, s - v, q - v * v, std::max(top, v));
    }
    cur[i] = 0;
  };
  for (Coeff k = 1; k <= bound; ++k)
    for (Coeff a0 = (k + 2) / 3; (3 * a0 - k) * (3 * a0 - k) <= r * a0 * a0; ++a0) {
      cur.assign(r + 1, 0);
      cur[0] = a0;
      if (r == 0) {
        if (3 * a0 == k) out.emplace_back(degree, cur);
        continue;
      }
      dfs(dfs, 1, a0, 3 * a0 - k, a0 * a0, 0);
    }
  std::sort(out.begin(), out.end(), [](const DivisorClass& a, const DivisorClass& b) {
    Coeff ka = anticanonical_degree(a), kb = anticanonical_degree(b);
    return ka != kb ? ka < kb : a < b;
  });
  return out;
}

// Minimal degree E <= D (in the effective order) with more monomials than sections.
// Steps down one generator at a time while the surplus persists. With a single relation of degree D0 the
// surplus classes are exactly D0 + (monomial degrees), so the descent ends at D0.
inline std::optional<DivisorClass> relation_degree_below(const DivisorClass& D, Counter& counter,
                                                         const std::vector<DivisorClass>& N) {
  auto has_surplus = [&](const DivisorClass& E) { return !E.is_zero() && counter.count(E) > h0(E, N); };
  if (!has_surplus(D)) return std::nullopt;
  DivisorClass E = D;
  for (bool moved = true; moved;) {
    moved = false;
    for (const auto& g : counter.gens()) {
      DivisorClass F = E - g;
      if (counter.count(F) > 0 && has_surplus(F)) {
        E = F;
        moved = true;
        break;
      }
    }
  }
  return E;
}

struct ClassifyOptions {
  int bound = 9;         // candidate and relation scans stop at (D,-K) <= bound
  int verify_bound = 6;  // final counting check over nef classes
};

class Classifier {
 public:
  explicit Classifier(ClassifyOptions opt = {}) : opt_(opt) {}

  const ClassifyOptions& options() const { return opt_; }

  // Any root basis is accepted; the answer is reported in the coordinates of t.
  Classification classify(const SurfaceType& t) {
    std::vector<DivisorClass> basis;
    SurfaceType tn = normalize_type(t, &basis);
    Classification c = classify_normalized(tn);
    auto back = [&](const DivisorClass& D) {
      DivisorClass x = DivisorClass::zero(D.degree());
      for (int k = 0; k < D.rank(); ++k) x += D[k] * basis[k];
      return x;
    };
    for (auto& g : c.generators) g = back(g);
    if (c.relation_degree) c.relation_degree = back(*c.relation_degree);
    return c;
  }

  // t must come from normalize_type
  Classification classify_normalized(const SurfaceType& t) {
    auto key = memo_key(t);
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    Classification c = t.degree >= 7 ? base_scan(t) : step(t);
    c.assumption_dependent = (t.degree == 1);
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(std::move(key), c);
    return c;
  }

 private:
  using Key = std::pair<int, std::vector<std::vector<Coeff>>>;

  static Key memo_key(const SurfaceType& t) {
    Key k{t.degree, {}};
    for (auto& a : t.simple_twos) k.second.push_back(a.coeffs());
    std::sort(k.second.begin(), k.second.end());
    return k;
  }

  static Classification multi(MultiReason r, std::vector<DivisorClass> gens, size_t neg, std::string detail = {}) {
    Classification c;
    c.verdict = Verdict::MultiRelation;
    c.reason = r;
    c.generators = std::move(gens);
    c.negative_count = neg;
    c.detail = std::move(detail);
    return c;
  }

  // Degrees >= 7: every generator degree shows up as a deficit among nef classes.
  Classification base_scan(const SurfaceType& t) {
    const int d = t.degree;
    auto N = t.negative_curves();
    std::vector<DivisorClass> gens = N;
    for (const auto& D : nef_classes(d, N, opt_.bound)) {
      Coeff c = gens.empty() ? 0 : Counter(gens).count(D);
      Coeff chi = euler_char(D);
      if (c > chi) return multi(MultiReason::CountingSurplus, gens, N.size(), "surplus at " + D.str());
      for (Coeff i = c; i < chi; ++i) gens.push_back(D);
    }
    Classification c;
    c.generators = gens;
    c.negative_count = N.size();
    if (static_cast<int>(gens.size()) == 12 - d) c.verdict = Verdict::Toric;
    else return multi(MultiReason::CountingSurplus, gens, N.size(), "unexpected generator count");
    return c;
  }

  Classification step(const SurfaceType& t) {
    const int d = t.degree;
    const auto N = t.negative_curves();
    const size_t s = N.size();
    if (static_cast<int>(s) >= 14 - d)
      return multi(MultiReason::TooManyNegativeCurves, N, s, std::to_string(s) + " negative curves");

    std::set<DivisorClass> cand_set;
    for (const auto& E : t.minus_ones) {
      Contraction con = contract(t, E);
      Classification ct = classify_normalized(con.target);
      if (ct.verdict == Verdict::MultiRelation)
        return multi(MultiReason::ContractionArgument, N, s,
                     "contracting " + E.str() + " gives degree " + std::to_string(d + 1) + " type " +
                         con.target.name());
      for (const auto& D : ct.nef_generators()) cand_set.insert(con.pull(D));
    }
    const DivisorClass K = anticanonical(d);
    cand_set.insert(K);
    std::vector<DivisorClass> cands(cand_set.begin(), cand_set.end());
    std::sort(cands.begin(), cands.end(), [](const DivisorClass& a, const DivisorClass& b) {
      Coeff ka = anticanonical_degree(a), kb = anticanonical_degree(b);
      return ka != kb ? ka < kb : a < b;
    });

    std::vector<DivisorClass> gens = N;
    std::optional<DivisorClass> D0;
    auto monomials_minus_relation = [&](Counter& cnt, const DivisorClass& D) {
      long long c = cnt.count(D);
      if (D0) c -= cnt.count(D - *D0);
      return c;
    };
    auto surplus = [&](const std::string& why) { return multi(MultiReason::CountingSurplus, gens, s, why); };

    for (const auto& D : cands) {
      if (anticanonical_degree(D) > opt_.bound) throw inconclusive_error("candidate degree beyond scan bound");
      if (!is_nef(D, N)) continue;
      Counter cnt(gens);
      long long c = monomials_minus_relation(cnt, D);
      Coeff chi = euler_char(D);
      if (c > chi) {
        if (D0) return surplus("second relation below " + D.str());
        D0 = relation_degree_below(D, cnt, N);
        if (!D0) throw std::logic_error("surplus without a relation degree");
        if (cnt.count(*D0) - h0(*D0, N) != 1) return surplus("several relations in degree " + D0->str());
        c = monomials_minus_relation(cnt, D);
        if (c > chi) return surplus("second relation below " + D.str());
      }
      if (c < chi) {
        if (D == K && chi - c > 2) throw std::logic_error("more than two generators in degree -K");
        for (long long i = c; i < chi; ++i) gens.push_back(D);
      }
      if (static_cast<int>(gens.size()) > 13 - d)
        return surplus(std::to_string(gens.size()) + " generators");
    }

    // nef classes in range, cheapest first: pick up a relation not seen so far, then check the counts
    Counter cnt(gens);
    for (const auto& D : nef_classes(d, N, opt_.verify_bound)) {
      long long c = monomials_minus_relation(cnt, D);
      Coeff chi = euler_char(D);
      if (c > chi && !D0) {
        D0 = relation_degree_below(D, cnt, N);
        if (!D0 || cnt.count(*D0) - h0(*D0, N) != 1) return surplus("several relations below " + D.str());
        c = monomials_minus_relation(cnt, D);
      }
      if (c > chi) return surplus("second relation below " + D.str());
      if (c < chi) throw inconclusive_error("missing generator in degree " + D.str());
    }
    // then multiples of -K up to the scan bound
    if (static_cast<int>(gens.size()) == 13 - d && !D0) {
      for (Coeff m = 1; m * d <= opt_.bound && !D0; ++m) {
        DivisorClass D = m * K;
        long long c = cnt.count(D);
        if (c < euler_char(D)) throw inconclusive_error("missing generator in degree " + D.str());
        if (c > euler_char(D)) {
          D0 = relation_degree_below(D, cnt, N);
          if (!D0 || cnt.count(*D0) - h0(*D0, N) != 1) return surplus("several relations below " + D.str());
        }
      }
      if (!D0) throw inconclusive_error("no relation degree up to (D,-K) <= " + std::to_string(opt_.bound));
    }

    Classification out;
    out.generators = gens;
    out.negative_count = s;
    out.relation_degree = D0;
    const int ng = static_cast<int>(gens.size());
    if (ng == 12 - d && !D0)
      out.verdict = Verdict::Toric;
    else if (ng == 13 - d && D0)
      out.verdict = Verdict::OneRelation;
    else
      throw inconclusive_error("generator count " + std::to_string(ng) + " does not close up");
    return out;
  }

  ClassifyOptions opt_;
  std::mutex mu_;
  std::map<Key, Classification> memo_;
};

inline Classification classify_type(const SurfaceType& t, ClassifyOptions opt = {}) {
  Classifier c(opt);
  return c.classify(t);
}

}  // namespace dpcox

