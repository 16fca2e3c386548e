#pragma once

#include <set>
#include <utility>

#include "poly.hpp"

namespace dpcox {

struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GroebnerCaps {
  size_t max_basis = 200;
  int max_degree = 40;
  size_t max_pairs = 20000;
};

inline Poly monic(const Poly& p) {
  if (p.is_zero()) return p;
  return mpq_class(1 / p.lead_coeff()) * p;
}

// full reduction; G need not be a Groebner basis
inline Poly reduce_by(const Poly& f, const std::vector<Poly>& G) { return divide(f, G).remainder; }

// Buchberger under grlex with the product criterion; returns the reduced basis.
inline std::vector<Poly> groebner_basis(const std::vector<Poly>& gens, const GroebnerCaps& caps = {}) {
  std::vector<Poly> G;
  for (auto& g : gens)
    if (!g.is_zero()) G.push_back(monic(g));
  if (G.empty()) return G;
  const int n = G[0].nvars();

  std::set<std::pair<size_t, size_t>> pairs;
  for (size_t j = 0; j < G.size(); ++j)
    for (size_t i = 0; i < j; ++i) pairs.insert({i, j});
  size_t processed = 0;

  while (!pairs.empty()) {
    auto [i, j] = *pairs.begin();
    pairs.erase(pairs.begin());
    if (++processed > caps.max_pairs) throw resource_error("groebner: pair cap reached");
    const Exps &a = G[i].lead_exps(), &b = G[j].lead_exps();
    Exps lcm(n);
    bool coprime = true;
    for (int k = 0; k < n; ++k) {
      lcm[k] = std::max(a[k], b[k]);
      if (a[k] && b[k]) coprime = false;
    }
    if (coprime) continue;
    Exps ma(n), mb(n);
    for (int k = 0; k < n; ++k) {
      ma[k] = lcm[k] - a[k];
      mb[k] = lcm[k] - b[k];
    }
    Poly s = G[i].times_term(ma, 1) - G[j].times_term(mb, 1);
    Poly r = reduce_by(s, G);
    if (r.is_zero()) continue;
    if (r.degree() > caps.max_degree) throw resource_error("groebner: degree cap reached");
    G.push_back(monic(r));
    if (G.size() > caps.max_basis) throw resource_error("groebner: basis cap reached");
    for (size_t k = 0; k + 1 < G.size(); ++k) pairs.insert({k, G.size() - 1});
  }

  // minimize, then interreduce
  std::vector<Poly> M;
  for (size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j || !divides(G[j].lead_exps(), G[i].lead_exps())) continue;
      redundant = G[j].lead_exps() != G[i].lead_exps() || j < i;
    }
    if (!redundant) M.push_back(G[i]);
  }
  for (size_t i = 0; i < M.size(); ++i) {
    std::vector<Poly> rest;
    for (size_t j = 0; j < M.size(); ++j)
      if (j != i) rest.push_back(M[j]);
    Poly tail = M[i] - Poly::monomial(M[i].lead_exps(), M[i].lead_coeff());
    M[i] = Poly::monomial(M[i].lead_exps(), 1) + reduce_by(tail, rest);
  }
  std::sort(M.begin(), M.end(), [](const Poly& x, const Poly& y) { return GrlexGreater()(y.lead_exps(), x.lead_exps()); });
  return M;
}

// Remainder of F modulo the ideal of gens; zero iff F lies in the ideal.
inline Poly groebner_reduce(const Poly& F, const std::vector<Poly>& gens, const GroebnerCaps& caps = {}) {
  if (gens.empty()) throw std::invalid_argument("groebner_reduce: no generators");
  for (auto& g : gens)
    if (g.nvars() != F.nvars()) throw std::invalid_argument("groebner_reduce: arity mismatch");
  auto G = groebner_basis(gens, caps);
  if (G.empty()) return F;
  return reduce_by(F, G);
}

}  // namespace dpcox
