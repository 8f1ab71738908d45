#ifndef CONDBOUND_NUMCORE_POLY_ROOTS_HPP
#define CONDBOUND_NUMCORE_POLY_ROOTS_HPP

// Certified polynomial roots: Aberth-Ehrlich iteration (double seed, then
// MPFR refinement) on each squarefree factor, followed by Weierstrass
// inclusion discs. The union of discs D(z_i, d|W_i|) contains every root and
// each connected component holds as many roots as discs, so pairwise
// disjoint discs certify one root each.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <vector>

#include "condbound/numcore/ext_real.hpp"
#include "condbound/numcore/polynomial.hpp"

namespace condbound {

/// A complex value known to lie in the closed disc of `radius` around `value`.
struct CertifiedComplex {
  ExtComplex value;
  ExtReal radius;
  unsigned multiplicity = 1;

  bool exact() const { return radius.is_zero(); }

  /// Enclosure of the real part.
  Interval real_interval() const { return Interval::around(value.re, radius); }

  /// Enclosure of the modulus.
  Interval modulus() const {
    ExtReal lo = sub(abs(value, Rounding::down), radius, Rounding::down);
    if (lo.sign() < 0) lo = ExtReal(lo.precision());
    return {lo, add(abs(value, Rounding::up), radius, Rounding::up)};
  }
};

using ComplexList = std::vector<CertifiedComplex>;

namespace detail {

using cd = std::complex<double>;

/// Double-precision Aberth seed. Returns nullopt if coefficients do not fit.
inline std::optional<std::vector<cd>> aberth_double(const IntPolynomial& f) {
  const int d = f.degree();
  std::size_t maxbits = 0;
  for (const auto& c : f.coeffs()) maxbits = std::max(maxbits, bit_length(c));
  if (maxbits > 900) return std::nullopt;
  std::vector<double> c(f.coeffs().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.coeffs()[i].get_d();

  double r0 = std::pow(std::abs(c[0] / c[d]), 1.0 / d);
  if (!(r0 > 0) || !std::isfinite(r0)) r0 = 1.0;
  std::vector<cd> z(d);
  for (int k = 0; k < d; ++k) {
    double ang = 2.0 * std::numbers::pi * k / d + 0.7;
    z[k] = std::polar(r0, ang);
  }
  for (int it = 0; it < 500; ++it) {
    double worst = 0.0;
    for (int i = 0; i < d; ++i) {
      cd p = c[d], dp = 0.0;
      for (int k = d - 1; k >= 0; --k) {
        dp = dp * z[i] + p;
        p = p * z[i] + c[k];
      }
      if (p == 0.0) continue;
      cd s = 0.0;
      for (int j = 0; j < d; ++j)
        if (j != i) s += 1.0 / (z[i] - z[j]);
      cd ratio = dp == 0.0 ? cd(1e-3, 1e-3) : p / dp;
      cd w = ratio / (1.0 - ratio * s);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = cd(1e-3, 1e-3);
      z[i] -= w;
      worst = std::max(worst, std::abs(w) / std::max(1e-300, std::abs(z[i])));
    }
    if (worst < 1e-15) break;
  }
  return z;
}

/// Coefficients converted once per precision.
template <typename Scalar>
struct Horner {
  std::vector<ExtReal> c;
  std::vector<ExtReal> abs_c;  // |c_k| at low precision, for rounding slack
  bool exact_coeffs = true;

  Horner(const IntPolynomial& f, long prec) {
    c.reserve(f.coeffs().size());
    abs_c.reserve(f.coeffs().size());
    for (const auto& v : f.coeffs()) {
      if (bit_length(v) > static_cast<std::size_t>(prec)) exact_coeffs = false;
      c.push_back(ExtReal::from_int(v, prec));
      abs_c.push_back(ExtReal::from_int(abs(v), kMinPrecision, Rounding::up));
    }
  }

  /// p(z) and p'(z).
  void eval(const Scalar& z, Scalar& p, Scalar& dp) const {
    const long prec = c.back().precision();
    p = lift(c.back(), prec);
    dp = lift(ExtReal(prec), prec);
    for (std::size_t k = c.size() - 1; k-- > 0;) {
      dp = dp * z + p;
      p = p * z;
      add_real(p, c[k]);
    }
  }

  Scalar value(const Scalar& z) const {
    const long prec = c.back().precision();
    Scalar p = lift(c.back(), prec);
    for (std::size_t k = c.size() - 1; k-- > 0;) {
      p = p * z;
      add_real(p, c[k]);
    }
    return p;
  }

  /// Upper bound for sum |c_k| |z|^k.
  ExtReal abs_sum(const ExtReal& absz) const {
    ExtReal m = with_precision(absz, kMinPrecision, Rounding::up);
    ExtReal s = abs_c.back();
    for (std::size_t k = abs_c.size() - 1; k-- > 0;) s = add(mul(s, m, Rounding::up), abs_c[k], Rounding::up);
    return s;
  }

  static Scalar lift(const ExtReal& x, long prec) {
    if constexpr (std::is_same_v<Scalar, ExtReal>) {
      (void)prec;
      return x;
    } else {
      return ExtComplex(x, ExtReal(prec));
    }
  }

  static void add_real(Scalar& p, const ExtReal& x) {
    if constexpr (std::is_same_v<Scalar, ExtReal>) {
      p += x;
    } else {
      p.re += x;
    }
  }
};

inline ExtReal magnitude(const ExtReal& x, Rounding r = Rounding::nearest) { return abs(x, r); }
inline ExtReal magnitude(const ExtComplex& z, Rounding r = Rounding::nearest) { return abs(z, r); }

inline ExtComplex to_scalar(const cd& z, long prec, ExtComplex*) {
  return {ExtReal::from_double(z.real(), prec), ExtReal::from_double(z.imag(), prec)};
}
inline ExtReal to_scalar(const cd& z, long prec, ExtReal*) { return ExtReal::from_double(z.real(), prec); }

inline ExtComplex one_like(long prec, ExtComplex*) { return ExtComplex(ExtReal(1, prec), ExtReal(prec)); }
inline ExtReal one_like(long prec, ExtReal*) { return ExtReal(1, prec); }

/// Aberth refinement at `prec`; stops when corrections reach the precision floor
/// or stop shrinking.
template <typename Scalar>
void aberth_refine(const Horner<Scalar>& h, std::vector<Scalar>& z, long prec) {
  const std::size_t d = z.size();
  const ExtReal tol = ExtReal::pow2(-(prec - 6), prec);
  const Scalar one = one_like(prec, static_cast<Scalar*>(nullptr));
  ExtReal prev_worst = ExtReal::infinity(prec);
  int stalls = 0;
  const int max_iter = 60 + static_cast<int>(prec / 4);
  Scalar p(prec), dp(prec);
  for (int it = 0; it < max_iter; ++it) {
    ExtReal worst(prec);
    for (std::size_t i = 0; i < d; ++i) {
      h.eval(z[i], p, dp);
      if (magnitude(p).is_zero()) continue;
      Scalar s = Scalar(prec);
      for (std::size_t j = 0; j < d; ++j)
        if (j != i) s += one / (z[i] - z[j]);
      Scalar ratio = magnitude(dp).is_zero() ? one * ExtReal::pow2(-20, prec) : p / dp;
      Scalar w = ratio / (one - ratio * s);
      z[i] -= w;
      ExtReal scale = max(magnitude(z[i]), ExtReal::pow2(-(prec / 2), prec));
      ExtReal rel = magnitude(w) / scale;
      if (rel > worst) worst = rel;
    }
    if (worst <= tol) break;
    if (worst >= prev_worst) {
      if (++stalls >= 3) break;
    } else {
      stalls = 0;
    }
    prev_worst = worst;
  }
}

/// Weierstrass radii r_i = d |p(z_i)| / |lc prod (z_i - z_j)| with a rounding
/// allowance; exact zeros (no inexact MPFR operation) get radius 0.
template <typename Scalar>
std::vector<ExtReal> weierstrass_radii(const Horner<Scalar>& h, const std::vector<Scalar>& z, long prec) {
  const std::size_t d = z.size();
  const ExtReal lc = abs(h.c.back());
  // Relative error allowance for the Horner evaluation and the products.
  const ExtReal eps = mul_si(ExtReal::pow2(-prec, prec), static_cast<long>(8 * d + 16), Rounding::up);
  std::vector<ExtReal> r;
  r.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    mpfr_clear_inexflag();
    Scalar p = h.value(z[i]);
    bool exact_zero = h.exact_coeffs && magnitude(p).is_zero() && !mpfr_inexflag_p();
    if (exact_zero) {
      r.emplace_back(prec);
      continue;
    }
    ExtReal den = lc;
    for (std::size_t j = 0; j < d; ++j)
      if (j != i) den = mul(den, magnitude(z[i] - z[j], Rounding::down), Rounding::down);
    den = mul(den, sub(ExtReal(1, prec), eps, Rounding::down), Rounding::down);
    ExtReal num = add(magnitude(p, Rounding::up), mul(eps, h.abs_sum(magnitude(z[i], Rounding::up)), Rounding::up),
                      Rounding::up);
    if (den.sign() <= 0) {
      r.push_back(ExtReal::infinity(prec));
      continue;
    }
    r.push_back(mul_si(div(num, den, Rounding::up), static_cast<long>(d), Rounding::up));
  }
  return r;
}

template <typename Scalar>
bool discs_isolated(const std::vector<Scalar>& z, const std::vector<ExtReal>& r) {
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      ExtReal gap = magnitude(z[i] - z[j], Rounding::down);
      if (gap <= add(r[i], r[j], Rounding::up)) return false;
    }
  return true;
}

template <typename Scalar>
bool radii_small(const std::vector<Scalar>& z, const std::vector<ExtReal>& r, long prec) {
  const ExtReal lim = ExtReal::pow2(-(prec / 2), prec);
  for (std::size_t i = 0; i < z.size(); ++i) {
    ExtReal scale = max(magnitude(z[i]), ExtReal(1, prec));
    if (r[i] > mul(lim, scale)) return false;
  }
  return true;
}

/// Root of c1 x + c0: exact when the quotient is representable.
inline CertifiedComplex linear_root(const IntPolynomial& f, long prec) {
  ExtReal num = ExtReal::from_int(-f[0], prec * 2 + static_cast<long>(bit_length(f[0])));
  ExtReal den = ExtReal::from_int(f[1], prec * 2 + static_cast<long>(bit_length(f[1])));
  ExtReal q(prec);
  int t = mpfr_div(q.get(), num.get(), den.get(), MPFR_RNDN);
  ExtReal rad(prec);
  if (t != 0 || bit_length(f[0]) > static_cast<std::size_t>(prec) || bit_length(f[1]) > static_cast<std::size_t>(prec))
    rad = mul(abs(q, Rounding::up), ExtReal::pow2(1 - prec, prec), Rounding::up);
  return {ExtComplex::real(q), rad, 1};
}

template <typename Scalar>
std::optional<std::vector<Scalar>> seed(const IntPolynomial& f, long prec, bool real_parts) {
  std::vector<Scalar> z;
  if (auto zd = aberth_double(f)) {
    if (real_parts) {
      std::vector<double> re;
      for (auto& v : *zd) re.push_back(v.real());
      std::sort(re.begin(), re.end());
      for (std::size_t i = 1; i < re.size(); ++i)
        if (re[i] == re[i - 1]) return std::nullopt;
      for (double v : re) z.push_back(to_scalar(cd(v, 0.0), prec, static_cast<Scalar*>(nullptr)));
    } else {
      for (auto& v : *zd) z.push_back(to_scalar(v, prec, static_cast<Scalar*>(nullptr)));
    }
    return z;
  }
  if (real_parts) return std::nullopt;
  // Coefficients beyond double range: seed on a circle and let MPFR iterate.
  const int d = f.degree();
  ExtReal lo = log2(ExtReal::from_int(abs(f[0]), kMinPrecision));
  ExtReal hi = log2(ExtReal::from_int(abs(f.leading()), kMinPrecision));
  ExtReal r0 = exp2(div_si(lo - hi, d));
  for (int k = 0; k < d; ++k) {
    double ang = 2.0 * std::numbers::pi * k / d + 0.7;
    ExtComplex v(mul(with_precision(r0, prec), ExtReal::from_double(std::cos(ang), prec)),
                 mul(with_precision(r0, prec), ExtReal::from_double(std::sin(ang), prec)));
    if constexpr (std::is_same_v<Scalar, ExtComplex>) z.push_back(v);
  }
  return z;
}

/// Simple roots of a squarefree polynomial with nonzero constant term.
/// `real_rooted` asserts all roots are real (symmetric-matrix char polys).
inline ComplexList simple_roots(const IntPolynomial& f, long prec, bool real_rooted) {
  const long ceiling = std::max(max_precision_bits(), prec);
  if (f.degree() == 1) return {linear_root(f, prec)};
  for (long p = prec; p <= ceiling; p *= 2) {
    if (real_rooted) {
      if (auto z = seed<ExtReal>(f, p, true)) {
        Horner<ExtReal> h(f, p);
        aberth_refine(h, *z, p);
        auto r = weierstrass_radii(h, *z, p);
        if (discs_isolated(*z, r) && radii_small(*z, r, p)) {
          ComplexList out;
          for (std::size_t i = 0; i < z->size(); ++i) out.push_back({ExtComplex::real((*z)[i]), r[i], 1});
          return out;
        }
      }
    }
    auto z = seed<ExtComplex>(f, p, false);
    Horner<ExtComplex> h(f, p);
    aberth_refine(h, *z, p);
    auto r = weierstrass_radii(h, *z, p);
    if (discs_isolated(*z, r) && radii_small(*z, r, p)) {
      ComplexList out;
      for (std::size_t i = 0; i < z->size(); ++i) {
        ExtComplex v = (*z)[i];
        ExtReal rad = r[i];
        // A real root within r of z is within r of Re z.
        if (real_rooted) v.im = ExtReal(p);
        out.push_back({v, rad, 1});
      }
      return out;
    }
  }
  throw PrecisionError("poly_roots: could not isolate roots of " + f.str(), ceiling);
}

inline void sort_roots(ComplexList& roots) {
  std::stable_sort(roots.begin(), roots.end(), [](const CertifiedComplex& a, const CertifiedComplex& b) {
    ExtReal ma = abs(a.value), mb = abs(b.value);
    if (ma != mb) return ma > mb;
    if (a.value.re != b.value.re) return a.value.re > b.value.re;
    return a.value.im > b.value.im;
  });
}

inline ComplexList roots_impl(const IntPolynomial& f, long prec, bool real_rooted) {
  if (f.is_zero()) throw DomainError("poly_roots: zero polynomial");
  ComplexList out;
  const std::size_t zeros = f.zero_root_multiplicity();
  IntPolynomial g = f.shift_down(zeros);
  for (const auto& sf : squarefree_decomposition(g)) {
    ComplexList rs = simple_roots(sf.factor, prec, real_rooted);
    for (auto& r : rs) {
      r.multiplicity = sf.multiplicity;
      for (unsigned m = 0; m < sf.multiplicity; ++m) out.push_back(r);
    }
  }
  for (std::size_t k = 0; k < zeros; ++k)
    out.push_back({ExtComplex(prec), ExtReal(prec), static_cast<unsigned>(zeros)});
  return out;
}

}  // namespace detail

/// All deg(f) complex roots, repeated by multiplicity, each with a certified
/// error radius. Sorted by decreasing modulus.
inline ComplexList poly_roots(const IntPolynomial& f, long precision_bits = kDefaultPrecision) {
  ComplexList out = detail::roots_impl(f, precision_bits, false);
  detail::sort_roots(out);
  return out;
}

/// Roots of a polynomial known to have only real roots (e.g. the
/// characteristic polynomial of a symmetric matrix); imaginary parts are zero
/// and results are sorted in decreasing order.
inline ComplexList real_rooted_roots(const IntPolynomial& f, long precision_bits = kDefaultPrecision) {
  ComplexList out = detail::roots_impl(f, precision_bits, true);
  std::stable_sort(out.begin(), out.end(),
                   [](const CertifiedComplex& a, const CertifiedComplex& b) { return a.value.re > b.value.re; });
  return out;
}

}  // namespace condbound

#endif  // CONDBOUND_NUMCORE_POLY_ROOTS_HPP
