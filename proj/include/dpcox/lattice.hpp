#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpcox {

using Coeff = std::int64_t;

struct context_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

namespace detail {
inline Coeff checked_mul(Coeff a, Coeff b) {
#ifndef NDEBUG
  Coeff r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("lattice coefficient overflow");
  return r;
#else
  return a * b;
#endif
}
inline Coeff checked_add(Coeff a, Coeff b) {
#ifndef NDEBUG
  Coeff r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("lattice coefficient overflow");
  return r;
#else
  return a + b;
#endif
}
}  // namespace detail

// A class a0*l0 + a1*l1 + ... + ar*lr in the Picard lattice of a degree-d blow-up of P2.
class DivisorClass {
 public:
  DivisorClass() = default;
  DivisorClass(int degree, std::vector<Coeff> coeffs) : degree_(degree), c_(std::move(coeffs)) {
    if (degree_ < 1 || degree_ > 9) throw domain_error("degree must lie in 1..9");
    if (c_.size() != static_cast<size_t>(10 - degree_))
      throw domain_error("coefficient vector must have length 10-d");
  }

  static DivisorClass zero(int degree) { return {degree, std::vector<Coeff>(10 - degree, 0)}; }
  static DivisorClass ell(int degree, int i) {
    auto z = zero(degree);
    z.c_.at(i) = 1;
    return z;
  }

  int degree() const { return degree_; }
  int rank() const { return static_cast<int>(c_.size()); }
  int r() const { return rank() - 1; }
  const std::vector<Coeff>& coeffs() const { return c_; }
  Coeff operator[](size_t i) const { return c_[i]; }
  Coeff& operator[](size_t i) { return c_[i]; }
  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](Coeff v) { return v == 0; });
  }

  DivisorClass& operator+=(const DivisorClass& o) {
    same_context(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] = detail::checked_add(c_[i], o.c_[i]);
    return *this;
  }
  DivisorClass& operator-=(const DivisorClass& o) {
    same_context(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] = detail::checked_add(c_[i], -o.c_[i]);
    return *this;
  }
  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator-(DivisorClass a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }
  friend DivisorClass operator*(Coeff k, DivisorClass a) {
    for (auto& v : a.c_) v = detail::checked_mul(k, v);
    return a;
  }

  friend bool operator==(const DivisorClass& a, const DivisorClass& b) {
    return a.degree_ == b.degree_ && a.c_ == b.c_;
  }
  friend auto operator<=>(const DivisorClass& a, const DivisorClass& b) {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    return a.c_ <=> b.c_;
  }

  void same_context(const DivisorClass& o) const {
    if (degree_ != o.degree_) throw context_error("divisor classes live in different lattices");
  }

  // 2l0-l1-l2 style
  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
      Coeff v = c_[i];
      if (v == 0) continue;
      if (v < 0)
        os << "-";
      else if (!first)
        os << "+";
      if (v != 1 && v != -1) os << (v < 0 ? -v : v);
      os << "l" << i;
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  int degree_ = 9;
  std::vector<Coeff> c_{0};
};

inline std::ostream& operator<<(std::ostream& os, const DivisorClass& d) { return os << d.str(); }

struct DivisorClassHash {
  size_t operator()(const DivisorClass& d) const {
    size_t h = std::hash<int>()(d.degree());
    for (Coeff v : d.coeffs()) h = h * 1000003u ^ std::hash<Coeff>()(v);
    return h;
  }
};

inline Coeff intersect(const DivisorClass& a, const DivisorClass& b) {
  a.same_context(b);
  Coeff s = detail::checked_mul(a[0], b[0]);
  for (int i = 1; i < a.rank(); ++i) s = detail::checked_add(s, -detail::checked_mul(a[i], b[i]));
  return s;
}

inline DivisorClass anticanonical(int degree) {
  std::vector<Coeff> c(10 - degree, -1);
  c[0] = 3;
  return {degree, std::move(c)};
}

inline Coeff anticanonical_degree(const DivisorClass& d) { return intersect(d, anticanonical(d.degree())); }

// All classes D with (D,D) = n and (D,-K) = k, i.e. a1+...+ar = k-3a0. Exhaustive: a0 is bounded by
// (3a0-k)^2 <= r(a0^2-n), the rest by a DFS on partial sums and squares.
inline std::vector<DivisorClass> classes_with(int degree, Coeff n, Coeff k) {
  const int r = 9 - degree;
  std::vector<DivisorClass> out;
  std::vector<Coeff> cur(r + 1, 0);

  auto dfs = [&](auto&& self, int i, Coeff sum, Coeff sq) -> void {
    // remaining coordinates i..r must have total `sum` and total square `sq`
    const int m = r - i + 1;
    if (m == 0) {
      if (sum == 0 && sq == 0) out.emplace_back(degree, cur);
      return;
    }
    if (sq < 0 || sum * sum > static_cast<Coeff>(m) * sq) return;
    const Coeff b = static_cast<Coeff>(std::sqrt(static_cast<double>(sq))) + 1;
    for (Coeff v = -b; v <= b; ++v) {
      if (v * v > sq) continue;
      cur[i] = v;
      self(self, i + 1, sum - v, sq - v * v);
    }
    cur[i] = 0;
  };

  // (9-r) a0^2 - 6k a0 + k^2 + r n <= 0
  const double A = 9.0 - r, B = -6.0 * k, C = static_cast<double>(k) * k + static_cast<double>(r) * n;
  double disc = B * B - 4 * A * C;
  if (disc < 0) return out;
  const Coeff lo = static_cast<Coeff>(std::floor((-B - std::sqrt(disc)) / (2 * A))) - 1;
  const Coeff hi = static_cast<Coeff>(std::ceil((-B + std::sqrt(disc)) / (2 * A))) + 1;
  for (Coeff a0 = lo; a0 <= hi; ++a0) {
    const Coeff s = k - 3 * a0, q = a0 * a0 - n;
    if (s * s > static_cast<Coeff>(r) * q && !(r == 0 && s == 0 && q == 0)) continue;
    cur[0] = a0;
    if (r == 0) {
      if (s == 0 && q == 0) out.emplace_back(degree, cur);
      continue;
    }
    dfs(dfs, 1, s, q);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Roots (-2, 0) and (-1)-classes (-1, 1).
inline std::vector<DivisorClass> enumerate_classes(int degree, int self_int, int k_degree) {
  if (degree < 1 || degree > 9) throw domain_error("degree must lie in 1..9");
  if (!((self_int == -2 && k_degree == 0) || (self_int == -1 && k_degree == 1)))
    throw domain_error("only (-2,0) and (-1,1) class families are supported");
  return classes_with(degree, self_int, k_degree);
}

inline std::vector<DivisorClass> roots(int degree) { return enumerate_classes(degree, -2, 0); }

inline bool is_root(const DivisorClass& a) {
  return intersect(a, a) == -2 && anticanonical_degree(a) == 0;
}

inline std::vector<DivisorClass> neg1_curves(int degree, const std::vector<DivisorClass>& twos) {
  for (const auto& t : twos) {
    if (t.degree() != degree) throw context_error("root from another lattice");
    if (!is_root(t)) throw std::invalid_argument("neg1_curves: input is not a root");
  }
  std::vector<DivisorClass> out;
  for (auto& e : enumerate_classes(degree, -1, 1)) {
    bool ok = true;
    for (const auto& t : twos)
      if (intersect(e, t) < 0) {
        ok = false;
        break;
      }
    if (ok) out.push_back(e);
  }
  return out;
}

inline DivisorClass reflect(const DivisorClass& root, const DivisorClass& d) {
  if (intersect(root, root) != -2) throw std::invalid_argument("reflect: not a root");
  return d + intersect(d, root) * root;
}

}  // namespace dpcox
