#ifndef CONDBOUND_NUMCORE_EXACT_SOLVE_HPP
#define CONDBOUND_NUMCORE_EXACT_SOLVE_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "condbound/numcore/matrix.hpp"

namespace condbound {

namespace detail {

/// Gauss-Jordan over Q on [A | B]; B is overwritten with A^{-1} B.
inline void gauss_jordan(RatMatrix& a, RatMatrix& b) {
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) throw DegenerateInstance("exact_solve: matrix is singular");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(k, j), b(p, j));
    }
    const BigRational inv = 1 / a(k, k);
    for (std::size_t j = k; j < n; ++j) a(k, j) *= inv;
    for (std::size_t j = 0; j < b.cols(); ++j) b(k, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      const BigRational f = a(i, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) -= f * b(k, j);
    }
  }
}

}  // namespace detail

/// Exact rational solution of Ax = b. Singular A is a degenerate instance.
inline RatVector exact_solve(const RatMatrix& a, const RatVector& b) {
  if (!a.square()) throw DimensionError("exact_solve: matrix is not square");
  if (b.size() != a.rows()) throw DimensionError("exact_solve: right-hand side length mismatch");
  RatMatrix m = a;
  RatMatrix rhs(b.size(), 1, b);
  detail::gauss_jordan(m, rhs);
  return rhs.entries();
}

inline RatVector exact_solve(const IntMatrix& a, const IntVector& b) {
  RatVector rb(b.begin(), b.end());
  return exact_solve(to_rational(a), rb);
}

/// Exact inverse over Q.
inline RatMatrix exact_inverse(const IntMatrix& a) {
  if (!a.square()) throw DimensionError("exact_inverse: matrix is not square");
  RatMatrix m = to_rational(a);
  RatMatrix inv = RatMatrix::identity(a.rows());
  detail::gauss_jordan(m, inv);
  return inv;
}

}  // namespace condbound

#endif  // CONDBOUND_NUMCORE_EXACT_SOLVE_HPP
