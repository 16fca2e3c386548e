#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ade.hpp"
#include "lattice.hpp"

namespace dpcox {

struct SurfaceType {
  int degree = 9;
  std::vector<DivisorClass> simple_twos;
  std::vector<DivisorClass> minus_ones;
  Ade ade;
  int num_lines = 0;

  std::vector<DivisorClass> negative_curves() const {
    auto v = simple_twos;
    v.insert(v.end(), minus_ones.begin(), minus_ones.end());
    return v;
  }
  std::string name() const { return ade.str() + ":" + std::to_string(num_lines); }
};

inline SurfaceType make_type(int degree, std::vector<DivisorClass> twos) {
  auto ade = identify_ade(twos);
  if (!ade) throw std::invalid_argument("roots do not form a simple system of ADE type");
  SurfaceType t;
  t.degree = degree;
  std::sort(twos.begin(), twos.end());
  t.simple_twos = std::move(twos);
  t.minus_ones = neg1_curves(degree, t.simple_twos);
  t.ade = *ade;
  t.num_lines = static_cast<int>(t.minus_ones.size());
  return t;
}

// Subsystems that only occur in characteristic 2.
inline bool is_char2_only(int degree, const Ade& ade) {
  const auto s = ade.str();
  if (degree == 2) return s == "7A1";
  if (degree == 1) return s == "7A1" || s == "8A1" || s == "D4+4A1";
  return false;
}

inline SurfaceType normalize_type(const SurfaceType& t, std::vector<DivisorClass>* basis = nullptr);

// Every type of the given degree, one representative per (ade, lines).
// Grows simple systems one root at a time, extending a single representative per invariant.
inline std::vector<SurfaceType> enumerate_types(int degree) {
  if (degree < 1 || degree > 7) throw domain_error("type enumeration covers degrees 1..7");
  const auto R = roots(degree);
  const auto M = enumerate_classes(degree, -1, 1);

  using Key = std::pair<std::string, int>;
  std::map<Key, SurfaceType> seen;
  std::vector<SurfaceType> frontier;
  {
    SurfaceType t;
    t.degree = degree;
    t.minus_ones = M;
    t.num_lines = static_cast<int>(M.size());
    seen[{t.ade.str(), t.num_lines}] = t;
    frontier.push_back(t);
  }
  while (!frontier.empty()) {
    std::map<Key, SurfaceType> next;
    for (const auto& t : frontier) {
      for (const auto& a : R) {
        bool ok = true;
        for (const auto& b : t.simple_twos) {
          Coeff p = intersect(a, b);
          if (p != 0 && p != 1) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        auto twos = t.simple_twos;
        twos.push_back(a);
        auto ade = identify_ade(twos);
        if (!ade) continue;
        int lines = 0;
        for (const auto& e : t.minus_ones)
          if (intersect(e, a) >= 0) ++lines;
        Key key{ade->str(), lines};
        if (seen.count(key) || next.count(key)) continue;
        SurfaceType u;
        u.degree = degree;
        std::sort(twos.begin(), twos.end());
        u.simple_twos = std::move(twos);
        for (const auto& e : t.minus_ones)
          if (intersect(e, a) >= 0) u.minus_ones.push_back(e);
        u.ade = *ade;
        u.num_lines = lines;
        next.emplace(key, std::move(u));
      }
    }
    frontier.clear();
    for (auto& [k, v] : next) {
      seen.emplace(k, v);
      frontier.push_back(std::move(v));
    }
  }
  std::vector<SurfaceType> out;
  for (auto& [k, v] : seen)
    if (!is_char2_only(degree, v.ade)) out.push_back(normalize_type(v));
  std::sort(out.begin(), out.end(), [](const SurfaceType& a, const SurfaceType& b) {
    return std::make_tuple(a.simple_twos.size(), a.ade.str(), -a.num_lines) <
           std::make_tuple(b.simple_twos.size(), b.ade.str(), -b.num_lines);
  });
  return out;
}

inline std::optional<SurfaceType> find_type(const std::vector<SurfaceType>& types, const Ade& ade,
                                            std::optional<int> lines = std::nullopt) {
  std::optional<SurfaceType> hit;
  for (const auto& t : types)
    if (t.ade == ade && (!lines || t.num_lines == *lines)) {
      if (hit) throw std::invalid_argument("type " + ade.str() + " is ambiguous; give the number of lines");
      hit = t;
    }
  return hit;
}

// Extended Dynkin diagram of negative curves; diagonal holds self-intersections.
struct ExtDynkin {
  std::vector<DivisorClass> classes;
  std::vector<std::vector<Coeff>> m;

  int size() const { return static_cast<int>(m.size()); }
  Coeff self(int v) const { return m[v][v]; }
  Coeff edge(int v, int w) const { return m[v][w]; }
};

inline ExtDynkin build_ext_dynkin(const SurfaceType& t) {
  ExtDynkin g;
  g.classes = t.negative_curves();
  g.m = gram_matrix(g.classes);
  return g;
}

inline ExtDynkin blowdown_step(const ExtDynkin& g, int e) {
  if (g.self(e) != -1) throw std::invalid_argument("blowdown_step: vertex is not a (-1)-curve");
  ExtDynkin h;
  std::vector<int> keep;
  for (int v = 0; v < g.size(); ++v)
    if (v != e) keep.push_back(v);
  h.m.assign(keep.size(), std::vector<Coeff>(keep.size()));
  for (size_t i = 0; i < keep.size(); ++i) {
    h.classes.push_back(g.classes[keep[i]]);
    for (size_t j = 0; j < keep.size(); ++j)
      h.m[i][j] = g.m[keep[i]][keep[j]] + g.m[e][keep[i]] * g.m[e][keep[j]];
  }
  return h;
}

struct ContractionSequence {
  // vertex indices into build_ext_dynkin(t), in contraction order; the k-th one becomes l_{r-k+1}
  std::vector<int> order;
  // every vertex expressed in the basis produced by the contraction
  std::vector<DivisorClass> new_coords;
  // the new basis l'_0..l'_r written in the original coordinates
  std::vector<DivisorClass> new_basis;
};

inline ContractionSequence contraction_sequence(const SurfaceType& t) {
  const int d = t.degree, r = 9 - d;
  const ExtDynkin g0 = build_ext_dynkin(t);
  const int n = g0.size();
  ContractionSequence out;
  if (r == 0) {
    out.new_basis = {DivisorClass::ell(d, 0)};
    out.new_coords = g0.classes;
    return out;
  }

  // contraction state: alive flags, current matrix over all original vertices
  struct Step {
    int v;
    std::vector<Coeff> pairing;  // pairing of every original vertex image with v at contraction time
  };
  std::vector<Step> steps;
  std::vector<bool> alive(n, true);
  auto cur = g0.m;

  auto rec = [&](auto&& self) -> bool {
    if (static_cast<int>(steps.size()) == r) return true;
    std::vector<int> cand;
    for (int v = 0; v < n; ++v)
      if (alive[v] && cur[v][v] == -1) cand.push_back(v);
    std::sort(cand.begin(), cand.end(), [&](int a, int b) { return g0.classes[a] < g0.classes[b]; });
    for (int e : cand) {
      auto saved = cur;
      Step st{e, std::vector<Coeff>(n, 0)};
      for (int v = 0; v < n; ++v) st.pairing[v] = cur[e][v];
      for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w)
          if (alive[v] && alive[w] && v != e && w != e) cur[v][w] += saved[e][v] * saved[e][w];
      alive[e] = false;
      steps.push_back(st);
      if (self(self)) return true;
      steps.pop_back();
      alive[e] = true;
      cur = saved;
    }
    return false;
  };
  if (!rec(rec)) throw std::logic_error("no contraction to P2 found for type " + t.name());

  // step k (0-based) contracts to l_{r-k}
  std::vector<int> ell_of(n, -1);
  for (int k = 0; k < r; ++k) {
    out.order.push_back(steps[k].v);
    ell_of[steps[k].v] = r - k;
  }
  out.new_coords.assign(n, DivisorClass::zero(d));
  for (int v = 0; v < n; ++v) {
    DivisorClass c = DivisorClass::zero(d);
    // pairings with curves contracted before v (or all of them if v survives)
    for (int k = 0; k < r; ++k) {
      if (steps[k].v == v) break;
      c[r - k] = -steps[k].pairing[v];
    }
    if (ell_of[v] >= 0) {
      c[ell_of[v]] = 1;
    } else {
      Coeff sq = cur[v][v];
      Coeff a0 = static_cast<Coeff>(std::llround(std::sqrt(static_cast<double>(sq))));
      if (sq < 0 || a0 * a0 != sq) throw std::logic_error("surviving curve has non-square self-intersection");
      c[0] = a0;
    }
    out.new_coords[v] = c;
  }

  // l'_k = C_k + sum_{j>k} a_j l'_j, solved from j = r downwards
  out.new_basis.assign(r + 1, DivisorClass::zero(d));
  for (int k = 0; k < r; ++k) {
    int v = steps[k].v, idx = r - k;
    DivisorClass b = g0.classes[v];
    for (int j = idx + 1; j <= r; ++j) b += (-out.new_coords[v][j]) * out.new_basis[j];
    out.new_basis[idx] = b;
  }
  DivisorClass s = anticanonical(d);
  for (int i = 1; i <= r; ++i) s += out.new_basis[i];
  for (int i = 0; i <= r; ++i) {
    if (s[i] % 3 != 0) throw std::logic_error("new l0 is not integral");
    s[i] /= 3;
  }
  out.new_basis[0] = s;
  return out;
}

// Checks that the new basis is orthonormal of signature (1,r) and reproduces every vertex class.
inline bool contraction_roundtrip_ok(const SurfaceType& t, const ContractionSequence& cs) {
  const int d = t.degree, r = 9 - d;
  for (int i = 0; i <= r; ++i)
    for (int j = 0; j <= r; ++j) {
      Coeff want = (i != j) ? 0 : (i == 0 ? 1 : -1);
      if (intersect(cs.new_basis[i], cs.new_basis[j]) != want) return false;
    }
  auto classes = t.negative_curves();
  for (size_t v = 0; v < classes.size(); ++v) {
    DivisorClass back = DivisorClass::zero(d);
    for (int i = 0; i <= r; ++i) back += cs.new_coords[v][i] * cs.new_basis[i];
    if (!(back == classes[v])) return false;
  }
  return true;
}

// Same type rewritten in a basis coming from a contraction to P2, so l0 is nef and the li are effective.
// basis receives the new l'_k in the old coordinates.
inline SurfaceType normalize_type(const SurfaceType& t, std::vector<DivisorClass>* basis) {
  if (t.simple_twos.empty()) {
    if (basis) {
      basis->clear();
      for (int k = 0; k <= 9 - t.degree; ++k) basis->push_back(DivisorClass::ell(t.degree, k));
    }
    return t;
  }
  auto cs = contraction_sequence(t);
  if (basis) *basis = cs.new_basis;
  std::vector<DivisorClass> twos(cs.new_coords.begin(), cs.new_coords.begin() + static_cast<long>(t.simple_twos.size()));
  return make_type(t.degree, twos);
}

}  // namespace dpcox
