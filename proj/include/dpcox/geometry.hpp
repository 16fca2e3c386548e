#pragma once

#include <optional>
#include <string>
#include <vector>

#include "groebner.hpp"
#include "poly.hpp"

namespace dpcox {

struct unsupported_chart_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// P^d for d >= 3, P(2,1,1,1) for d = 2, P(3,2,1,1) for d = 1
struct AmbientSpace {
  std::vector<int> weights;

  static AmbientSpace for_degree(int d) {
    if (d >= 3 && d <= 9) return {std::vector<int>(d + 1, 1)};
    if (d == 2) return {{2, 1, 1, 1}};
    if (d == 1) return {{3, 2, 1, 1}};
    throw domain_error("no anticanonical model in this degree");
  }
  static AmbientSpace plane() { return {{1, 1, 1}}; }

  int dim() const { return static_cast<int>(weights.size()) - 1; }
  int nvars() const { return static_cast<int>(weights.size()); }
};

inline int rank_q(std::vector<std::vector<mpq_class>> M) {
  int rank = 0;
  const int rows = static_cast<int>(M.size());
  const int cols = rows ? static_cast<int>(M[0].size()) : 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int p = -1;
    for (int r = rank; r < rows; ++r)
      if (M[r][c] != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(M[p], M[rank]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || M[r][c] == 0) continue;
      mpq_class f = M[r][c] / M[rank][c];
      for (int k = c; k < cols; ++k) M[r][k] -= f * M[rank][k];
    }
    ++rank;
  }
  return rank;
}

enum class PointStatus { Singular, Smooth, NotOnSurface };

inline std::string to_string(PointStatus s) {
  switch (s) {
    case PointStatus::Singular:
      return "singular";
    case PointStatus::Smooth:
      return "smooth";
    case PointStatus::NotOnSurface:
      return "not on surface";
  }
  return "?";
}

// Jacobian test in an affine chart x_k = 1 with w_k = 1.
inline PointStatus singular_point_check(const std::vector<Poly>& F, const std::vector<mpq_class>& point,
                                        const AmbientSpace& space) {
  const int n = space.nvars();
  if (static_cast<int>(point.size()) != n) throw std::invalid_argument("point has the wrong number of coordinates");
  for (auto& f : F)
    if (f.nvars() != n) throw std::invalid_argument("equation in the wrong number of variables");
  int k = -1;
  for (int i = 0; i < n; ++i)
    if (space.weights[i] == 1 && point[i] != 0) {
      k = i;
      break;
    }
  if (k < 0) throw unsupported_chart_error("point has no nonzero coordinate of weight 1");

  // rescale so that x_k = 1
  std::vector<mpq_class> p(n);
  const mpq_class t = 1 / point[k];
  for (int i = 0; i < n; ++i) {
    mpq_class s = 1;
    for (int j = 0; j < space.weights[i]; ++j) s *= t;
    p[i] = point[i] * s;
  }
  for (auto& f : F)
    if (f.evaluate(p) != 0) return PointStatus::NotOnSurface;

  std::vector<std::vector<mpq_class>> J;
  for (auto& f : F) {
    Poly g = f.set_variable(k, 1);
    std::vector<mpq_class> row;
    for (int i = 0; i < n; ++i)
      if (i != k) row.push_back(g.derivative(i).evaluate(p));
    J.push_back(std::move(row));
  }
  const int codim = n - 1 - 2;
  return rank_q(J) < codim ? PointStatus::Singular : PointStatus::Smooth;
}

struct CheckResult {
  bool ok = true;
  std::string message;

  static CheckResult fail(std::string m) { return {false, std::move(m)}; }
};

// phi: source -> P^2 in source coordinates; psi: P^2 -> source in y0,y1,y2.
inline CheckResult roundtrip_check(const std::vector<Poly>& equations, const std::vector<Poly>& phi,
                                   const std::vector<Poly>& psi, const AmbientSpace& source) {
  if (static_cast<int>(psi.size()) != source.nvars()) return CheckResult::fail("psi has the wrong number of components");
  if (phi.size() != 3) return CheckResult::fail("phi must have three components");
  for (auto& q : psi)
    if (q.nvars() != 3) return CheckResult::fail("psi components must be polynomials in y0,y1,y2");

  // weighted homogeneity of psi
  std::optional<mpq_class> unit;
  for (int i = 0; i < source.nvars(); ++i) {
    if (psi[i].is_zero()) continue;
    auto deg = weighted_degree(psi[i], {1, 1, 1});
    if (!deg) return CheckResult::fail("psi component " + std::to_string(i) + " is not homogeneous");
    mpq_class u(*deg, source.weights[i]);
    u.canonicalize();
    if (unit && *unit != u) return CheckResult::fail("psi components have inconsistent degrees");
    unit = u;
  }

  for (size_t j = 0; j < equations.size(); ++j)
    if (!equations[j].substitute(psi).is_zero())
      return CheckResult::fail("equation " + std::to_string(j + 1) + " does not vanish on psi");

  std::vector<Poly> comp;
  for (auto& f : phi) comp.push_back(f.substitute(psi));
  if (std::all_of(comp.begin(), comp.end(), [](const Poly& q) { return q.is_zero(); }))
    return CheckResult::fail("phi(psi(y)) vanishes identically");
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      Poly lhs = comp[i] * Poly::var(3, j) - comp[j] * Poly::var(3, i);
      if (!lhs.is_zero())
        return CheckResult::fail("phi(psi(y)) is not proportional to y in components " + std::to_string(i) + "," +
                                 std::to_string(j));
    }
  return {};
}

// psi from the pullbacks: curves contracted to points of P^2 go to 1, the rest to their plane equations.
inline std::vector<Poly> psi_from_pullbacks(const std::vector<Poly>& pullbacks,
                                            const std::vector<std::optional<Poly>>& plane_curves) {
  std::vector<Poly> images;
  for (auto& c : plane_curves) images.push_back(c ? *c : Poly::constant(3, 1));
  std::vector<Poly> psi;
  for (auto& p : pullbacks) psi.push_back(p.substitute(images));
  return psi;
}

// every equation lies in the ideal of the locus
inline bool locus_contained(const std::vector<Poly>& equations, const std::vector<Poly>& locus) {
  for (auto& f : equations)
    if (!groebner_reduce(f, locus).is_zero()) return false;
  return true;
}

}  // namespace dpcox
