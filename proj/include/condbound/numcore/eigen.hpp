#ifndef CONDBOUND_NUMCORE_EIGEN_HPP
#define CONDBOUND_NUMCORE_EIGEN_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "condbound/numcore/char_poly.hpp"
#include "condbound/numcore/ext_real.hpp"
#include "condbound/numcore/matrix.hpp"
#include "condbound/numcore/poly_roots.hpp"

namespace condbound {

/// Real eigenvalues of a symmetric integer matrix, descending, as roots of
/// char_poly(A).
inline ComplexList sym_eigenvalues(const IntMatrix& a, long precision_bits = kDefaultPrecision) {
  if (!a.square()) throw DimensionError("sym_eigenvalues: matrix is not square");
  if (!a.symmetric()) throw DomainError("sym_eigenvalues: matrix is not symmetric");
  return real_rooted_roots(char_poly(a), precision_bits);
}

/// Singular values, descending: square roots of the eigenvalues of AᵀA.
/// Returns cols(A) values (zeros included).
inline ComplexList singular_values(const IntMatrix& a, long precision_bits = kDefaultPrecision) {
  ComplexList lam = sym_eigenvalues(gram(a), precision_bits);
  ComplexList out;
  out.reserve(lam.size());
  for (const auto& l : lam) {
    const long p = l.value.re.precision();
    if (l.exact() && l.value.re.sign() <= 0) {
      out.push_back({ExtComplex(p), ExtReal(p), l.multiplicity});
      continue;
    }
    Interval li = l.real_interval();
    if (li.lo.sign() < 0) li.lo = ExtReal(p);
    Interval s = sqrt(li);
    CertifiedComplex c{ExtComplex::real(s.mid()), ExtReal(p), l.multiplicity};
    if (!l.exact() || s.lo != s.hi) {
      ExtReal c_hi = sub(s.hi, c.value.re, Rounding::up);
      ExtReal c_lo = sub(c.value.re, s.lo, Rounding::up);
      c.radius = max(c_hi, c_lo);
    }
    out.push_back(std::move(c));
  }
  return out;
}

namespace detail {

inline std::vector<ExtComplex> null_vector_impl(std::vector<std::vector<ExtComplex>> m, long prec) {
  const std::size_t n = m.size();
  ExtReal scale(prec);
  for (const auto& row : m)
    for (const auto& v : row) scale = max(scale, abs(v));
  if (scale < ExtReal(1, prec)) scale = ExtReal(1, prec);
  const ExtReal tol = mul(ExtReal::pow2(-(prec / 2), prec), scale);

  std::vector<std::size_t> col(n);
  for (std::size_t j = 0; j < n; ++j) col[j] = j;
  std::size_t rank = n;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pi = k, pj = k;
    ExtReal best(prec);
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j) {
        ExtReal v = abs(m[i][col[j]]);
        if (v > best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (best <= tol) {
      rank = k;
      break;
    }
    std::swap(m[k], m[pi]);
    std::swap(col[k], col[pj]);
    const ExtComplex piv = m[k][col[k]];
    for (std::size_t i = k + 1; i < n; ++i) {
      ExtComplex f = m[i][col[k]] / piv;
      if (f.is_zero()) continue;
      for (std::size_t j = k; j < n; ++j) m[i][col[j]] -= f * m[k][col[j]];
    }
  }
  if (rank == n) throw DomainError("null_vector: lambda not an eigenvalue at working precision");

  // Unknowns in pivot order: first free one set to 1, the rest to 0.
  std::vector<ExtComplex> y(n, ExtComplex(prec));
  y[rank] = ExtComplex(ExtReal(1, prec), ExtReal(prec));
  for (std::size_t i = rank; i-- > 0;) {
    ExtComplex s(prec);
    for (std::size_t j = i + 1; j < n; ++j) s += m[i][col[j]] * y[j];
    y[i] = -(s / m[i][col[i]]);
  }
  std::vector<ExtComplex> x(n, ExtComplex(prec));
  for (std::size_t j = 0; j < n; ++j) x[col[j]] = y[j];

  ExtReal nrm(prec);
  std::size_t big = 0;
  ExtReal bigmod(prec);
  for (std::size_t i = 0; i < n; ++i) {
    nrm += norm_sq(x[i]);
    ExtReal a = abs(x[i]);
    if (a > bigmod) {
      bigmod = a;
      big = i;
    }
  }
  nrm = sqrt(nrm);
  // Phase making x[big] real positive, folded into the normalization.
  ExtComplex phase = conj(x[big]) / mul(bigmod, nrm);
  for (auto& v : x) v = v * phase;
  x[big].im = ExtReal(prec);
  return x;
}

}  // namespace detail

/// Unit right null vector of (A - λI) by full-pivot elimination. The first
/// component of largest modulus is made real positive.
template <typename Scalar>
std::vector<ExtComplex> null_vector(const Matrix<Scalar>& a, const ExtComplex& lambda,
                                    long precision_bits = kDefaultPrecision) {
  if (!a.square()) throw DimensionError("null_vector: matrix is not square");
  const long prec = std::max(precision_bits, lambda.precision());
  const std::size_t n = a.rows();
  std::vector<std::vector<ExtComplex>> m(n, std::vector<ExtComplex>(n, ExtComplex(prec)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ExtReal v = ExtReal::from_rational(BigRational(a(i, j)), prec);
      m[i][j] = ExtComplex(v, ExtReal(prec));
    }
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i].re = sub(m[i][i].re, with_precision(lambda.re, prec));
    m[i][i].im = -with_precision(lambda.im, prec);
  }
  return detail::null_vector_impl(std::move(m), prec);
}

}  // namespace condbound

#endif  // CONDBOUND_NUMCORE_EIGEN_HPP
