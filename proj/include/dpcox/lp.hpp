#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace dpcox {

// Exact phase-one simplex: a point x with A x >= b, x free, or nullopt if none exists.
inline std::optional<std::vector<mpq_class>> feasible_point(const std::vector<std::vector<mpq_class>>& A,
                                                            const std::vector<mpq_class>& b) {
  const size_t m = A.size();
  if (m == 0) return std::vector<mpq_class>{};
  const size_t n = A[0].size();
  // columns: u (n), v (n), surplus (m), artificial (m), rhs
  const size_t nu = n, nv = n, ns = m, na = m;
  const size_t cols = nu + nv + ns + na;
  std::vector<std::vector<mpq_class>> T(m, std::vector<mpq_class>(cols + 1));
  std::vector<size_t> basis(m);
  for (size_t i = 0; i < m; ++i) {
    mpq_class sign = b[i] < 0 ? -1 : 1;
    for (size_t j = 0; j < n; ++j) {
      T[i][j] = sign * A[i][j];
      T[i][nu + j] = -sign * A[i][j];
    }
    T[i][nu + nv + i] = -sign;
    T[i][nu + nv + ns + i] = 1;
    T[i][cols] = sign * b[i];
    basis[i] = nu + nv + ns + i;
  }
  // objective: minimize sum of artificials, reduced costs row
  auto reduced = [&](size_t j) {
    mpq_class c = (j >= nu + nv + ns) ? 1 : 0;
    for (size_t i = 0; i < m; ++i)
      if (basis[i] >= nu + nv + ns) c -= T[i][j];
    return c;
  };
  for (int iter = 0; iter < 10000; ++iter) {
    size_t enter = cols;
    for (size_t j = 0; j < cols; ++j)
      if (reduced(j) < 0) {
        enter = j;
        break;
      }
    if (enter == cols) break;
    size_t leave = m;
    mpq_class best;
    for (size_t i = 0; i < m; ++i)
      if (T[i][enter] > 0) {
        mpq_class ratio = T[i][cols] / T[i][enter];
        if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
    if (leave == m) break;  // unbounded direction; cannot happen for phase one
    mpq_class p = T[leave][enter];
    for (auto& x : T[leave]) x /= p;
    for (size_t i = 0; i < m; ++i)
      if (i != leave && T[i][enter] != 0) {
        mpq_class f = T[i][enter];
        for (size_t j = 0; j <= cols; ++j) T[i][j] -= f * T[leave][j];
      }
    basis[leave] = enter;
  }
  mpq_class obj = 0;
  for (size_t i = 0; i < m; ++i)
    if (basis[i] >= nu + nv + ns) obj += T[i][cols];
  if (obj != 0) return std::nullopt;
  std::vector<mpq_class> x(n, 0);
  for (size_t i = 0; i < m; ++i) {
    if (basis[i] < nu) x[basis[i]] += T[i][cols];
    else if (basis[i] < nu + nv) x[basis[i] - nu] -= T[i][cols];
  }
  return x;
}

}  // namespace dpcox
