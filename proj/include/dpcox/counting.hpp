#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <algorithm>
#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "lattice.hpp"
#include "lp.hpp"

namespace dpcox {

inline Coeff euler_char(const DivisorClass& D) {
  Coeff s = intersect(D, D) + anticanonical_degree(D);
  if (s % 2 != 0) throw std::logic_error("non-integral Euler characteristic for " + D.str());
  return s / 2 + 1;
}

struct infeasible_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Rational w with (w, D_i) >= 1 for every D_i, via exact LP on the intersection pairing.
inline DivisorClass positive_functional_rational(const std::vector<DivisorClass>& degrees,
                                                 std::vector<mpq_class>* exact = nullptr) {
  if (degrees.empty()) throw infeasible_error("positive_functional: no degrees");
  const int d = degrees[0].degree(), n = 10 - d;
  std::vector<std::vector<mpq_class>> A;
  std::vector<mpq_class> b;
  for (const auto& D : degrees) {
    if (D.is_zero()) throw infeasible_error("positive_functional: zero degree");
    std::vector<mpq_class> row(n);
    row[0] = D[0];
    for (int i = 1; i < n; ++i) row[i] = -D[i];
    A.push_back(row);
    b.push_back(1);
  }
  auto x = feasible_point(A, b);
  if (!x) throw infeasible_error("positive_functional: degrees do not lie in a strictly convex cone");
  if (exact) *exact = *x;
  // clear denominators; the scaled vector still satisfies (w, D_i) >= 1
  mpz_class l = 1;
  for (auto& v : *x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  std::vector<Coeff> w(n);
  for (int i = 0; i < n; ++i) {
    mpq_class s = (*x)[i] * l;
    w[i] = s.get_num().get_si();
  }
  return {d, w};
}

inline DivisorClass positive_functional(const std::vector<DivisorClass>& degrees) {
  return positive_functional_rational(degrees);
}

// Number of ways to write D as a nonnegative integral combination of fixed degrees.
// A maximal independent subset of the degrees is solved for exactly; the remaining ones are looped over,
// bounded by a positive functional.
class Counter {
 public:
  explicit Counter(std::vector<DivisorClass> gens) : gens_(std::move(gens)) {
    if (gens_.empty()) return;
    w_ = positive_functional(gens_);
    for (auto& g : gens_) wg_.push_back(intersect(w_, g));
    split();
  }

  const std::vector<DivisorClass>& gens() const { return gens_; }
  const DivisorClass& functional() const { return w_; }

  long long count(const DivisorClass& D) {
    if (gens_.empty()) return D.is_zero() ? 1 : 0;
    Key key{};
    for (int j = 0; j < D.rank(); ++j) key[j] = D[j];
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    long long n = 0;
    std::vector<Coeff> e(gens_.size(), 0);
    walk(0, D, e, [&](const std::vector<Coeff>&) { ++n; });
    memo_.emplace(key, n);
    return n;
  }

  // exponent vectors of all monomials of degree D
  std::vector<std::vector<int>> monomials(const DivisorClass& D) {
    std::vector<std::vector<int>> out;
    if (gens_.empty()) {
      if (D.is_zero()) out.emplace_back();
      return out;
    }
    std::vector<Coeff> e(gens_.size(), 0);
    walk(0, D, e, [&](const std::vector<Coeff>& x) { out.emplace_back(x.begin(), x.end()); });
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  using Key = std::array<Coeff, 10>;
  struct KeyHash {
    size_t operator()(const Key& k) const {
      std::uint64_t h = 0x9e3779b97f4a7c15ull;
      for (Coeff v : k) {
        h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 0xbf58476d1ce4e5b9ull;
        h ^= h >> 31;
      }
      return static_cast<size_t>(h);
    }
  };

  // echelon form over Q picks the basis part and its pivot coordinates
  void split() {
    const int n = gens_[0].rank();
    std::vector<std::vector<mpq_class>> rows;
    std::vector<int> piv;
    for (size_t g = 0; g < gens_.size(); ++g) {
      std::vector<mpq_class> v(n);
      for (int j = 0; j < n; ++j) v[j] = gens_[g][j];
      for (size_t r = 0; r < rows.size(); ++r) {
        if (v[piv[r]] == 0) continue;
        mpq_class f = v[piv[r]] / rows[r][piv[r]];
        for (int j = 0; j < n; ++j) v[j] -= f * rows[r][j];
      }
      int p = -1;
      for (int j = 0; j < n && p < 0; ++j)
        if (v[j] != 0) p = j;
      if (p < 0) {
        free_.push_back(g);
        continue;
      }
      rows.push_back(v);
      piv.push_back(p);
      basis_.push_back(g);
    }
    // invert the basis restricted to the pivot coordinates
    const size_t m = basis_.size();
    std::vector<std::vector<mpq_class>> M(m, std::vector<mpq_class>(2 * m));
    for (size_t a = 0; a < m; ++a) {
      for (size_t b = 0; b < m; ++b) M[a][b] = gens_[basis_[b]][piv[a]];
      M[a][m + a] = 1;
    }
    for (size_t c = 0; c < m; ++c) {
      size_t r = c;
      while (M[r][c] == 0) ++r;
      std::swap(M[r], M[c]);
      mpq_class inv = 1 / M[c][c];
      for (auto& x : M[c]) x *= inv;
      for (size_t rr = 0; rr < m; ++rr)
        if (rr != c && M[rr][c] != 0) {
          mpq_class f = M[rr][c];
          for (size_t j = 0; j < 2 * m; ++j) M[rr][j] -= f * M[c][j];
        }
    }
    mpz_class l = 1;
    for (size_t a = 0; a < m; ++a)
      for (size_t b = 0; b < m; ++b) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), M[a][m + b].get_den_mpz_t());
    den_ = l.get_si();
    inv_.assign(m, std::vector<Coeff>(m));
    for (size_t a = 0; a < m; ++a)
      for (size_t b = 0; b < m; ++b) {
        mpq_class x = M[a][m + b] * l;
        inv_[a][b] = x.get_num().get_si();
      }
    piv_ = piv;
  }

  template <class F>
  void walk(size_t k, const DivisorClass& rest, std::vector<Coeff>& e, F&& emit) {
    if (intersect(w_, rest) < 0) return;
    if (k == free_.size()) {
      const size_t m = basis_.size();
      DivisorClass left = rest;
      for (size_t a = 0; a < m; ++a) {
        Coeff c = 0;
        for (size_t b = 0; b < m; ++b) c += inv_[a][b] * rest[piv_[b]];
        if (c < 0 || c % den_ != 0) return;
        c /= den_;
        e[basis_[a]] = c;
        left -= c * gens_[basis_[a]];
      }
      if (left.is_zero()) emit(e);
      for (size_t a = 0; a < m; ++a) e[basis_[a]] = 0;
      return;
    }
    const size_t g = free_[k];
    const Coeff wd = intersect(w_, rest);
    DivisorClass r = rest;
    for (Coeff x = 0; x * wg_[g] <= wd; ++x) {
      e[g] = x;
      walk(k + 1, r, e, emit);
      r -= gens_[g];
    }
    e[g] = 0;
  }

  std::vector<DivisorClass> gens_;
  DivisorClass w_;
  std::vector<Coeff> wg_;
  std::vector<size_t> basis_, free_;
  std::vector<int> piv_;
  std::vector<std::vector<Coeff>> inv_;
  Coeff den_ = 1;
  std::unordered_map<Key, long long, KeyHash> memo_;
};

inline long long count_combinations(const DivisorClass& D, const std::vector<DivisorClass>& degrees) {
  if (degrees.empty()) return D.is_zero() ? 1 : 0;
  Counter c(degrees);
  return c.count(D);
}

// h0 of an arbitrary class: strip fixed negative curves until nef (then chi) or clearly not effective.
inline Coeff h0(DivisorClass E, const std::vector<DivisorClass>& negative_curves) {
  for (int guard = 0; guard < 100000; ++guard) {
    if (E.is_zero()) return 1;
    if (anticanonical_degree(E) < 0 || E[0] < 0) return 0;
    bool moved = false;
    for (const auto& N : negative_curves)
      if (intersect(E, N) < 0) {
        E -= N;
        moved = true;
        break;
      }
    if (!moved) {
      if (anticanonical_degree(E) == 0) return 0;  // nonzero nef class orthogonal to -K does not exist
      return euler_char(E);
    }
  }
  throw std::logic_error("h0: fixed-part stripping did not terminate");
}

}  // namespace dpcox
