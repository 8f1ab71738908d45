#ifndef CONDBOUND_DETAIL_SMALL_SPECTRUM_HPP
#define CONDBOUND_DETAIL_SMALL_SPECTRUM_HPP

// Eigenvalue brackets for small symmetric positive semidefinite integer
// matrices (n <= 3) in double precision. Approximate roots come from closed
// forms; every bracket is then confirmed by an exact sign change of the
// integer characteristic polynomial at its (dyadic) endpoints, so the result
// is an enclosure, not an estimate. Repeated roots are found exactly from the
// discriminant. Anything that cannot be confirmed returns nullopt and callers
// fall back to the MPFR path.

#include <gmp.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>

#include "condbound/numcore/matrix.hpp"

namespace condbound::detail {

/// Closed double interval [lo, hi]; every operation rounds outward by one ulp
/// after the correctly rounded IEEE result.
struct DInterval {
  double lo = 0.0;
  double hi = 0.0;

  static DInterval point(double x) { return {x, x}; }
  static DInterval from_rational(const mpq_t q) {
    // mpq_get_d truncates toward zero; exact for small integers.
    double t = mpq_get_d(q);
    if (mpz_cmp_ui(mpq_denref(q), 1) == 0 && std::fabs(t) < 0x1p52) return {t, t};
    return {std::nextafter(t, -INFINITY), std::nextafter(t, INFINITY)};
  }
};

inline double down(double x) { return std::nextafter(x, -INFINITY); }
inline double up(double x) { return std::nextafter(x, INFINITY); }

inline DInterval operator+(DInterval a, DInterval b) { return {down(a.lo + b.lo), up(a.hi + b.hi)}; }
/// Nonnegative operands only.
inline DInterval operator*(DInterval a, DInterval b) { return {down(a.lo * b.lo), up(a.hi * b.hi)}; }
inline DInterval operator/(DInterval a, DInterval b) { return {down(a.lo / b.hi), up(a.hi / b.lo)}; }
inline DInterval dsqrt(DInterval a) { return {down(std::sqrt(a.lo)), up(std::sqrt(a.hi))}; }

/// log2 enclosure of a positive interval. Powers of two are exact; otherwise
/// two ulps of slack cover libm's log2 error.
inline DInterval dlog2(DInterval a) {
  auto lg = [](double x, bool upper) {
    int e;
    double m = std::frexp(x, &e);
    if (m == 0.5) return static_cast<double>(e - 1);
    double l = std::log2(x);
    return upper ? up(up(l)) : down(down(l));
  };
  return {lg(a.lo, false), lg(a.hi, true)};
}

struct Bracket {
  double lo;
  double hi;
};

/// Exact sign of sum c_i x^i for small integer coefficients and double x.
inline int exact_sign(const std::array<std::int64_t, 4>& c, int deg, double x) {
  thread_local struct Scratch {
    mpz_t n, t, m;
    Scratch() { mpz_inits(n, t, m, nullptr); }
    ~Scratch() { mpz_clears(n, t, m, nullptr); }
  } s;
  if (x == 0.0) return (c[0] > 0) - (c[0] < 0);
  int e;
  double fr = std::frexp(x, &e);
  auto mant = static_cast<std::int64_t>(std::ldexp(fr, 53));
  int q = e - 53;
  mpz_set_si(s.m, mant);
  if (q >= 0) {
    mpz_mul_2exp(s.m, s.m, static_cast<mp_bitcnt_t>(q));
    mpz_set_si(s.n, c[deg]);
    for (int i = deg - 1; i >= 0; --i) {
      mpz_mul(s.n, s.n, s.m);
      if (c[i] >= 0) mpz_add_ui(s.n, s.n, static_cast<unsigned long>(c[i]));
      else mpz_sub_ui(s.n, s.n, static_cast<unsigned long>(-c[i]));
    }
    return mpz_sgn(s.n);
  }
  // value * 2^{S deg} = sum c_i M^i 2^{S (deg - i)}, S = -q.
  const mp_bitcnt_t sh = static_cast<mp_bitcnt_t>(-q);
  mpz_set_si(s.n, c[deg]);
  for (int i = deg - 1; i >= 0; --i) {
    mpz_mul(s.n, s.n, s.m);
    mpz_set_si(s.t, c[i]);
    mpz_mul_2exp(s.t, s.t, sh * static_cast<mp_bitcnt_t>(deg - i));
    mpz_add(s.n, s.n, s.t);
  }
  return mpz_sgn(s.n);
}

/// Confirms a simple root near x by a sign change; widens a few times.
inline std::optional<Bracket> confirm_root(const std::array<std::int64_t, 4>& c, int deg, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) return std::nullopt;
  if (exact_sign(c, deg, x) == 0) return Bracket{x, x};
  double w = 0x1p-46;
  for (int attempt = 0; attempt < 4; ++attempt, w *= 256.0) {
    double lo = x * (1.0 - w);
    double hi = x * (1.0 + w);
    int sl = exact_sign(c, deg, lo);
    int sh = exact_sign(c, deg, hi);
    if (sl == 0) return Bracket{lo, lo};
    if (sh == 0) return Bracket{hi, hi};
    if (sl != sh) return Bracket{lo, hi};
  }
  return std::nullopt;
}

/// Newton polish in double; harmless if it does not improve.
inline double polish(const std::array<std::int64_t, 4>& c, int deg, double x) {
  for (int it = 0; it < 2; ++it) {
    double p = static_cast<double>(c[deg]), dp = 0.0;
    for (int i = deg - 1; i >= 0; --i) {
      dp = dp * x + p;
      p = p * x + static_cast<double>(c[i]);
    }
    if (dp == 0.0) break;
    double nx = x - p / dp;
    if (!std::isfinite(nx) || nx <= 0.0) break;
    x = nx;
  }
  return x;
}

/// Brackets for the eigenvalues of a symmetric positive definite matrix with
/// n <= 3, descending. nullopt when not confirmable (caller falls back).
inline std::optional<std::array<Bracket, 3>> spd_brackets(const IntMatrix& g) {
  const std::size_t n = g.rows();
  if (n == 0 || n > 3 || !g.square()) return std::nullopt;
  std::int64_t a[3][3];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!g(i, j).fits_slong_p() || abs(g(i, j)) > (1L << 12)) return std::nullopt;
      a[i][j] = g(i, j).get_si();
    }
  // Entries below 2^12 keep the cubic discriminant inside 128 bits.
  std::array<Bracket, 3> out{};
  if (n == 1) {
    if (a[0][0] <= 0) return std::nullopt;
    out[0] = {static_cast<double>(a[0][0]), static_cast<double>(a[0][0])};
    return out;
  }
  if (n == 2) {
    const std::int64_t tr = a[0][0] + a[1][1];
    const std::int64_t det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    if (det <= 0) return std::nullopt;
    const std::int64_t disc = tr * tr - 4 * det;
    if (disc == 0) {
      double r = static_cast<double>(tr) / 2.0;
      out[0] = out[1] = {r, r};
      return out;
    }
    std::array<std::int64_t, 4> c{det, -tr, 1, 0};
    double l1 = (static_cast<double>(tr) + std::sqrt(static_cast<double>(disc))) / 2.0;
    double l2 = static_cast<double>(det) / l1;
    auto b1 = confirm_root(c, 2, polish(c, 2, l1));
    auto b2 = confirm_root(c, 2, polish(c, 2, l2));
    if (!b1 || !b2 || !(b2->hi < b1->lo)) return std::nullopt;
    out[0] = *b1;
    out[1] = *b2;
    return out;
  }
  // t^3 - s1 t^2 + s2 t - s3
  const __int128 s1 = a[0][0] + a[1][1] + a[2][2];
  const __int128 s2 = static_cast<__int128>(a[0][0]) * a[1][1] - static_cast<__int128>(a[0][1]) * a[1][0] +
                      static_cast<__int128>(a[0][0]) * a[2][2] - static_cast<__int128>(a[0][2]) * a[2][0] +
                      static_cast<__int128>(a[1][1]) * a[2][2] - static_cast<__int128>(a[1][2]) * a[2][1];
  const __int128 s3 =
      a[0][0] * (static_cast<__int128>(a[1][1]) * a[2][2] - static_cast<__int128>(a[1][2]) * a[2][1]) -
      a[0][1] * (static_cast<__int128>(a[1][0]) * a[2][2] - static_cast<__int128>(a[1][2]) * a[2][0]) +
      a[0][2] * (static_cast<__int128>(a[1][0]) * a[2][1] - static_cast<__int128>(a[1][1]) * a[2][0]);
  if (s3 <= 0) return std::nullopt;
  const __int128 disc = s1 * s1 * s2 * s2 - 4 * s2 * s2 * s2 - 4 * s1 * s1 * s1 * s3 + 18 * s1 * s2 * s3 - 27 * s3 * s3;
  if (disc < 0) return std::nullopt;
  if (disc == 0) {
    const __int128 q = s1 * s1 - 3 * s2;  // (r - s)^2 for roots r, r, s
    if (q == 0) {
      double r = static_cast<double>(s1) / 3.0;
      out[0] = out[1] = out[2] = {r, r};
      return out;
    }
    const __int128 num = s1 * s2 - 9 * s3;
    const __int128 den = 2 * q;
    if (num % den != 0) return std::nullopt;
    const double r = static_cast<double>(num / den);
    const double s = static_cast<double>(s1 - 2 * (num / den));
    if (r > s) {
      out[0] = out[1] = {r, r};
      out[2] = {s, s};
    } else {
      out[0] = {s, s};
      out[1] = out[2] = {r, r};
    }
    return out;
  }
  std::array<std::int64_t, 4> c{-static_cast<std::int64_t>(s3), static_cast<std::int64_t>(s2),
                                -static_cast<std::int64_t>(s1), 1};
  const double A = static_cast<double>(s1), B = static_cast<double>(s2), C = static_cast<double>(s3);
  const double P = B - A * A / 3.0;
  const double Q = -2.0 * A * A * A / 27.0 + A * B / 3.0 - C;
  if (!(P < 0.0)) return std::nullopt;
  const double m = 2.0 * std::sqrt(-P / 3.0);
  double arg = 3.0 * Q / (P * m);
  arg = std::fmax(-1.0, std::fmin(1.0, arg));
  const double th = std::acos(arg) / 3.0;
  double l[3];
  for (int k = 0; k < 3; ++k) l[k] = m * std::cos(th - 2.0 * std::numbers::pi * k / 3.0) + A / 3.0;
  // l[0] >= l[1] >= l[2] up to rounding; recompute the smallest from the product.
  if (l[1] < l[2]) std::swap(l[1], l[2]);
  if (l[0] < l[1]) std::swap(l[0], l[1]);
  if (l[0] * l[1] > 0.0) l[2] = C / (l[0] * l[1]);
  for (int k = 0; k < 3; ++k) {
    auto b = confirm_root(c, 3, polish(c, 3, l[k]));
    if (!b) return std::nullopt;
    out[k] = *b;
  }
  if (!(out[1].hi < out[0].lo) || !(out[2].hi < out[1].lo)) return std::nullopt;
  return out;
}

}  // namespace condbound::detail

#endif  // CONDBOUND_DETAIL_SMALL_SPECTRUM_HPP
