#ifndef CONDBOUND_BOUNDS_HPP
#define CONDBOUND_BOUNDS_HPP

// A-priori worst-case bounds in the log2 domain. Upper bounds are reported
// rounded up, lower bounds (relgap) rounded down; the full enclosure is kept
// so callers can decide comparisons soundly.

#include <string>

#include "condbound/numcore.hpp"

namespace condbound {

struct BoundParams {
  unsigned long n = 0;
  unsigned long m = 0;
  unsigned long d = 0;
  unsigned long D = 0;
  unsigned long S = 0;
  BigInt H = 0;
  unsigned long c = 0;

  std::string str() const {
    std::string s;
    auto put = [&](const char* k, const std::string& v) { s += (s.empty() ? "" : " ") + std::string(k) + "=" + v; };
    if (n) put("n", std::to_string(n));
    if (m) put("m", std::to_string(m));
    if (d) put("d", std::to_string(d));
    if (D) put("D", std::to_string(D));
    if (S) put("S", std::to_string(S));
    put("H", H.get_str());
    if (c) put("c", std::to_string(c));
    return s;
  }
};

struct Log2Bound {
  Interval log2;
  int theorem_id = 0;
  BoundParams params;
  bool unspecified_constant = false;
  bool lower_bound = false;  // relgap >= 2^value; the "intended reading"

  /// Round-up for upper bounds, round-down for lower bounds.
  const ExtReal& log2_value() const { return lower_bound ? log2.lo : log2.hi; }
};

namespace detail {

inline Interval ilog2(const BigInt& x, long prec) { return log2(Interval::from_int(x, prec)); }
inline Interval iconst(const BigInt& x, long prec) { return Interval::from_int(x, prec); }
inline Interval iconst(const BigRational& x, long prec) { return Interval::from_rational(x, prec); }

inline void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

}  // namespace detail

/// κ ≤ n^{n/2+1} H^n.
inline Log2Bound thm1_bound(unsigned long n, const BigInt& h, long prec = kDefaultPrecision) {
  detail::require(n >= 1, "thm1_bound: n must be >= 1");
  if (h == 0) throw DomainError("thm1_bound: H = 0 (the zero matrix is singular)");
  detail::require(h >= 1, "thm1_bound: H must be >= 1");
  using namespace detail;
  Interval v = iconst(BigRational(n + 2, 2), prec) * ilog2(BigInt(n), prec) + iconst(BigInt(n), prec) * ilog2(h, prec);
  return {v, 1, {.n = n, .H = h}};
}

/// cond_LS ≤ 3 n^{n/2+1} m^{n+1/2} H^{2n+1}.
inline Log2Bound thm2_bound(unsigned long n, unsigned long m, const BigInt& h, long prec = kDefaultPrecision) {
  detail::require(n >= 1 && m >= n, "thm2_bound: needs m >= n >= 1");
  detail::require(h >= 1, "thm2_bound: H must be >= 1");
  using namespace detail;
  Interval v = ilog2(BigInt(3), prec) + iconst(BigRational(n + 2, 2), prec) * ilog2(BigInt(n), prec) +
               iconst(BigRational(2 * n + 1, 2), prec) * ilog2(BigInt(m), prec) +
               iconst(BigInt(2 * n + 1), prec) * ilog2(h, prec);
  return {v, 2, {.n = n, .m = m, .H = h}};
}

/// cond_NSE ≤ n^{3n} 2^{2n} (2√n H)^{2n³-2n}.
inline Log2Bound thm3_bound(unsigned long n, const BigInt& h, long prec = kDefaultPrecision) {
  detail::require(n >= 1, "thm3_bound: n must be >= 1");
  detail::require(h >= 1, "thm3_bound: H must be >= 1");
  using namespace detail;
  Interval ln = ilog2(BigInt(n), prec);
  BigInt e = BigInt(2) * n * n * n - BigInt(2) * n;
  Interval inner = iconst(BigInt(1), prec) + iconst(BigRational(1, 2), prec) * ln + ilog2(h, prec);
  Interval v = iconst(BigInt(3 * n), prec) * ln + iconst(BigInt(2 * n), prec) + iconst(e, prec) * inner;
  return {v, 3, {.n = n, .H = h}};
}

/// μ(f) ≤ 2^{2d²-2} d^{2d} H^{2d²}.
inline Log2Bound thm4_bound(unsigned long d, const BigInt& h, long prec = kDefaultPrecision) {
  detail::require(d >= 1, "thm4_bound: d must be >= 1");
  detail::require(h >= 1, "thm4_bound: H must be >= 1");
  using namespace detail;
  BigInt d2 = BigInt(2) * d * d;
  Interval v = iconst(BigInt(d2 - 2), prec) + iconst(BigInt(2 * d), prec) * ilog2(BigInt(d), prec) +
               iconst(d2, prec) * ilog2(h, prec);
  return {v, 4, {.d = d, .H = h}};
}

inline constexpr unsigned long kDefaultThm5Constant = 3;  // non-normative

/// μ(F, ζ) ≤ ((n+1) S H)^{D^{cn}} with an unspecified universal constant c.
inline Log2Bound thm5_bound(unsigned long n, unsigned long s, unsigned long dmax, const BigInt& h,
                            unsigned long c = kDefaultThm5Constant, long prec = kDefaultPrecision) {
  detail::require(n >= 1 && s >= 1 && dmax >= 1, "thm5_bound: n, S, D must be >= 1");
  detail::require(h >= 1, "thm5_bound: H must be >= 1");
  using namespace detail;
  BigInt e = ipow(BigInt(dmax), c * n);
  Interval v = iconst(e, prec) * ilog2(BigInt(n + 1) * s * h, prec);
  Log2Bound b{v, 5, {.n = n, .D = dmax, .S = s, .H = h, .c = c}};
  b.unspecified_constant = true;
  return b;
}

/// relgap(A) ≥ 8^{-n} (4n)^{-n²} H^{-2n²}, the intended direction.
inline Log2Bound thm6_bound(unsigned long n, const BigInt& h, long prec = kDefaultPrecision) {
  detail::require(n >= 1, "thm6_bound: n must be >= 1");
  detail::require(h >= 1, "thm6_bound: H must be >= 1");
  using namespace detail;
  Interval v = -(iconst(BigInt(3 * n), prec) + iconst(BigInt(n * n), prec) * ilog2(BigInt(4 * n), prec) +
                 iconst(BigInt(2 * n * n), prec) * ilog2(h, prec));
  Log2Bound b{v, 6, {.n = n, .H = h}};
  b.lower_bound = true;
  return b;
}

/// Exact rational value of the relgap lower bound above.
inline BigRational thm6_rational(unsigned long n, const BigInt& h) {
  BigInt den = ipow(BigInt(8), n) * ipow(BigInt(4 * n), n * n) * ipow(h, 2 * n * n);
  return BigRational(BigInt(1), den);
}

/// relgap(f) ≥ (8H)^{-2d}, the intended direction.
inline Log2Bound thm7_bound(unsigned long d, const BigInt& h, long prec = kDefaultPrecision) {
  detail::require(d >= 1, "thm7_bound: d must be >= 1");
  detail::require(h >= 1, "thm7_bound: H must be >= 1");
  using namespace detail;
  Interval v = -(iconst(BigInt(2 * d), prec) * (iconst(BigInt(3), prec) + ilog2(h, prec)));
  Log2Bound b{v, 7, {.d = d, .H = h}};
  b.lower_bound = true;
  return b;
}

inline BigRational thm7_rational(unsigned long d, const BigInt& h) {
  return BigRational(BigInt(1), ipow(BigInt(8) * h, 2 * d));
}

/// Characteristic-polynomial coefficient bound max |p_i| ≤ (2√n H)^n,
/// decided exactly as p_i² ≤ 4^n n^n H^{2n}.
struct Lemma1Check {
  bool holds = true;
  BigInt max_coeff;
  BigInt bound_squared;
};

inline Lemma1Check check_lemma1(const IntMatrix& a) {
  if (!a.square()) throw DimensionError("check_lemma1: matrix is not square");
  const unsigned long n = a.rows();
  IntPolynomial p = char_poly(a);
  BigInt h = max_abs_entry(a);
  Lemma1Check r;
  r.max_coeff = p.max_abs_coeff();
  r.bound_squared = ipow(BigInt(4), n) * ipow(BigInt(n), n) * ipow(h, 2 * n);
  r.holds = r.max_coeff * r.max_coeff <= r.bound_squared;
  return r;
}

}  // namespace condbound

#endif  // CONDBOUND_BOUNDS_HPP
