#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lattice.hpp"

namespace dpcox {

using Exps = std::vector<int>;

inline int total_degree(const Exps& e) {
  int s = 0;
  for (int v : e) s += v;
  return s;
}

// graded lex, larger first
struct GrlexGreater {
  bool operator()(const Exps& a, const Exps& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

inline bool divides(const Exps& a, const Exps& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

// Sparse polynomial over Q in a fixed number of variables; no zero coefficients are stored.
class Poly {
 public:
  using Terms = std::map<Exps, mpq_class, GrlexGreater>;

  explicit Poly(int nvars = 0) : n_(nvars) {}

  static Poly constant(int nvars, const mpq_class& c) {
    Poly p(nvars);
    if (c != 0) p.t_[Exps(nvars, 0)] = c;
    return p;
  }
  static Poly var(int nvars, int i) {
    Exps e(nvars, 0);
    e.at(i) = 1;
    return monomial(e);
  }
  static Poly monomial(const Exps& e, const mpq_class& c = 1) {
    Poly p(static_cast<int>(e.size()));
    for (int v : e)
      if (v < 0) throw std::invalid_argument("negative exponent");
    if (c != 0) p.t_[e] = c;
    return p;
  }

  int nvars() const { return n_; }
  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }
  const Terms& terms() const { return t_; }
  bool is_monomial() const { return t_.size() == 1; }

  const Exps& lead_exps() const {
    if (t_.empty()) throw std::logic_error("leading term of zero");
    return t_.begin()->first;
  }
  const mpq_class& lead_coeff() const {
    if (t_.empty()) throw std::logic_error("leading term of zero");
    return t_.begin()->second;
  }
  int degree() const { return t_.empty() ? -1 : total_degree(lead_exps()); }

  mpq_class coeff(const Exps& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? mpq_class(0) : it->second;
  }

  void add_term(const Exps& e, mpq_class c) {
    check_arity(static_cast<int>(e.size()));
    // mpq_class(n, d) is not reduced on construction
    c.canonicalize();
    if (c == 0) return;
    auto [it, fresh] = t_.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) t_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    check_arity(o.n_);
    for (auto& [e, c] : o.t_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_arity(o.n_);
    for (auto& [e, c] : o.t_) add_term(e, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& [e, c] : a.t_) c = -c;
    return a;
  }
  friend Poly operator*(const mpq_class& k, Poly a) {
    if (k == 0) return Poly(a.n_);
    for (auto& [e, c] : a.t_) c *= k;
    return a;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_arity(b.n_);
    Poly r(a.n_);
    Exps e(a.n_);
    for (auto& [ea, ca] : a.t_)
      for (auto& [eb, cb] : b.t_) {
        for (int i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  // multiply by c * x^e
  Poly times_term(const Exps& m, const mpq_class& k) const {
    Poly r(n_);
    Exps e(n_);
    for (auto& [ea, ca] : t_) {
      for (int i = 0; i < n_; ++i) e[i] = ea[i] + m[i];
      r.t_.emplace_hint(r.t_.end(), e, ca * k);
    }
    return r;
  }

  Poly pow(int k) const {
    if (k < 0) throw std::invalid_argument("negative power");
    Poly r = constant(n_, 1), b = *this;
    while (k) {
      if (k & 1) r *= b;
      k >>= 1;
      if (k) b *= b;
    }
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.n_ == b.n_ && a.t_ == b.t_; }

  // x_i -> images[i]; all images share one arity
  Poly substitute(const std::vector<Poly>& images) const {
    if (static_cast<int>(images.size()) != n_) throw std::invalid_argument("substitute: arity mismatch");
    const int m = images.empty() ? 0 : images[0].nvars();
    for (auto& q : images)
      if (q.nvars() != m) throw std::invalid_argument("substitute: images of different arity");
    std::vector<std::vector<Poly>> powers(n_);
    Poly r(m);
    for (auto& [e, c] : t_) {
      Poly term = constant(m, c);
      for (int i = 0; i < n_; ++i) {
        if (e[i] == 0) continue;
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(constant(m, 1));
        while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * images[i]);
        term *= pw[e[i]];
      }
      r += term;
    }
    return r;
  }

  mpq_class evaluate(const std::vector<mpq_class>& x) const {
    if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("evaluate: arity mismatch");
    mpq_class s = 0;
    for (auto& [e, c] : t_) {
      mpq_class v = c;
      for (int i = 0; i < n_; ++i)
        for (int k = 0; k < e[i]; ++k) v *= x[i];
      s += v;
    }
    return s;
  }

  Poly derivative(int i) const {
    Poly r(n_);
    for (auto& [e, c] : t_) {
      if (e.at(i) == 0) continue;
      Exps f = e;
      --f[i];
      r.add_term(f, c * e[i]);
    }
    return r;
  }

  // x_i = value, keeping the arity
  Poly set_variable(int i, const mpq_class& value) const {
    Poly r(n_);
    for (auto& [e, c] : t_) {
      Exps f = e;
      mpq_class k = c;
      for (int j = 0; j < e[i]; ++j) k *= value;
      f[i] = 0;
      r.add_term(f, k);
    }
    return r;
  }

  std::string str(const std::string& var = "x", int first_index = 0) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : t_) {
      mpq_class a = abs(c);
      bool constant_term = total_degree(e) == 0;
      os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
      if (a != 1 || constant_term) os << a.get_str() << (constant_term ? "" : "*");
      bool firstv = true;
      for (int i = 0; i < n_; ++i) {
        if (e[i] == 0) continue;
        if (!firstv) os << "*";
        os << var << (i + first_index);
        if (e[i] > 1) os << "^" << e[i];
        firstv = false;
      }
      first = false;
    }
    return os.str();
  }

 private:
  void check_arity(int m) const {
    if (m != n_) throw std::invalid_argument("polynomials in different numbers of variables");
  }
  int n_;
  Terms t_;
};

// Degree in a multigraded ring; nullopt when the terms disagree.
inline std::optional<DivisorClass> graded_degree(const Poly& p, const std::vector<DivisorClass>& var_degrees) {
  if (static_cast<int>(var_degrees.size()) != p.nvars()) throw std::invalid_argument("graded_degree: arity mismatch");
  if (var_degrees.empty()) throw std::invalid_argument("graded_degree: empty ring");
  const int d = var_degrees[0].degree();
  std::optional<DivisorClass> deg;
  if (p.is_zero()) return DivisorClass::zero(d);
  for (auto& [e, c] : p.terms()) {
    DivisorClass D = DivisorClass::zero(d);
    for (int i = 0; i < p.nvars(); ++i)
      if (e[i]) D += static_cast<Coeff>(e[i]) * var_degrees[i];
    if (!deg)
      deg = D;
    else if (!(*deg == D))
      return std::nullopt;
  }
  return deg;
}

// Weighted degree with integer weights; nullopt when not homogeneous.
inline std::optional<int> weighted_degree(const Poly& p, const std::vector<int>& weights) {
  if (static_cast<int>(weights.size()) != p.nvars()) throw std::invalid_argument("weighted_degree: arity mismatch");
  std::optional<int> deg;
  for (auto& [e, c] : p.terms()) {
    int s = 0;
    for (int i = 0; i < p.nvars(); ++i) s += weights[i] * e[i];
    if (!deg)
      deg = s;
    else if (*deg != s)
      return std::nullopt;
  }
  return deg ? deg : std::optional<int>(0);
}

struct Division {
  std::vector<Poly> quotients;
  Poly remainder;
};

// Multivariate division under graded lex.
inline Division divide(const Poly& f, const std::vector<Poly>& G) {
  for (auto& g : G)
    if (g.is_zero()) throw domain_error("division by the zero polynomial");
  Division out;
  for (auto& g : G) out.quotients.emplace_back(g.nvars());
  out.remainder = Poly(f.nvars());
  Poly p = f;
  Exps m(f.nvars());
  while (!p.is_zero()) {
    const Exps lp = p.lead_exps();
    const mpq_class lc = p.lead_coeff();
    bool reduced = false;
    for (size_t i = 0; i < G.size(); ++i) {
      if (!divides(G[i].lead_exps(), lp)) continue;
      for (int j = 0; j < f.nvars(); ++j) m[j] = lp[j] - G[i].lead_exps()[j];
      mpq_class k = lc / G[i].lead_coeff();
      out.quotients[i].add_term(m, k);
      p -= G[i].times_term(m, k);
      reduced = true;
      break;
    }
    if (!reduced) {
      out.remainder.add_term(lp, lc);
      p.add_term(lp, -lc);
    }
  }
  return out;
}

// Q with F = Q*R, or nullopt when R does not divide F.
inline std::optional<Poly> exact_divide(const Poly& F, const Poly& R) {
  if (R.is_zero()) throw domain_error("exact_divide: zero divisor");
  auto d = divide(F, {R});
  if (!d.remainder.is_zero()) return std::nullopt;
  return d.quotients[0];
}

// Polynomials from [[coef, [exps]], ...] style data
inline Poly make_poly(int nvars, const std::vector<std::pair<std::string, Exps>>& terms) {
  Poly p(nvars);
  for (auto& [c, e] : terms) {
    if (static_cast<int>(e.size()) != nvars) throw std::invalid_argument("exponent vector of wrong length");
    mpq_class q(c);
    q.canonicalize();
    p.add_term(e, q);
  }
  return p;
}

}  // namespace dpcox
