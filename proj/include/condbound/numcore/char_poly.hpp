#ifndef CONDBOUND_NUMCORE_CHAR_POLY_HPP
#define CONDBOUND_NUMCORE_CHAR_POLY_HPP

#include <cstddef>
#include <vector>

#include "condbound/numcore/matrix.hpp"
#include "condbound/numcore/polynomial.hpp"

namespace condbound {

/// det(A - tI) with exact integer coefficients, leading coefficient (-1)^n.
///
/// n <= 3 uses sums of principal minors directly; larger matrices go through
/// Faddeev-LeVerrier, whose divisions by k are exact over the integers.
inline IntPolynomial char_poly(const IntMatrix& a) {
  if (!a.square()) throw DimensionError("char_poly: matrix is not square");
  const std::size_t n = a.rows();
  std::vector<BigInt> c(n + 1, BigInt(0));
  // c[k] is the coefficient of t^k in det(tI - A); the sign flip happens at the end.
  if (n == 0) {
    c[0] = 1;
  } else if (n == 1) {
    c = {BigInt(-a(0, 0)), BigInt(1)};
  } else if (n == 2) {
    c = {a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0), BigInt(-(a(0, 0) + a(1, 1))), BigInt(1)};
  } else if (n == 3) {
    BigInt tr = a(0, 0) + a(1, 1) + a(2, 2);
    BigInt m2 = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) + a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0) +
                a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
    BigInt det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                 a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                 a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    c = {BigInt(-det), m2, BigInt(-tr), BigInt(1)};
  } else {
    IntMatrix m(n, n, BigInt(0));
    c[n] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
      IntMatrix am = a * m;
      for (std::size_t i = 0; i < n; ++i) am(i, i) += c[n - k + 1];
      m = std::move(am);
      IntMatrix prod = a * m;
      BigInt tr = 0;
      for (std::size_t i = 0; i < n; ++i) tr += prod(i, i);
      BigInt q;
      mpz_divexact_ui(q.get_mpz_t(), tr.get_mpz_t(), static_cast<unsigned long>(k));
      c[n - k] = -q;
    }
  }
  if (n % 2 == 1)
    for (auto& v : c) v = -v;
  return IntPolynomial(std::move(c));
}

}  // namespace condbound

#endif  // CONDBOUND_NUMCORE_CHAR_POLY_HPP
