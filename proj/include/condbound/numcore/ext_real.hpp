#ifndef CONDBOUND_NUMCORE_EXT_REAL_HPP
#define CONDBOUND_NUMCORE_EXT_REAL_HPP

// Extended-precision reals on top of MPFR, with an explicit rounding tag so
// that lower/upper bounds can be produced by directed rounding and compared
// conservatively.

#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <string>
#include <utility>

#include "condbound/numcore/bigint.hpp"
#include "condbound/numcore/errors.hpp"

namespace condbound {

inline constexpr long kMinPrecision = 64;
inline constexpr long kDefaultPrecision = 256;
inline constexpr long kDefaultMaxPrecision = 4096;

/// Precision ceiling for on-demand doubling. CONDBOUND_MAX_PRECISION_BITS
/// overrides the default of 4096 bits.
inline long max_precision_bits() {
  if (const char* env = std::getenv("CONDBOUND_MAX_PRECISION_BITS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= kMinPrecision) return v;
  }
  return kDefaultMaxPrecision;
}

enum class Rounding { nearest, down, up };

inline mpfr_rnd_t to_mpfr(Rounding r) {
  switch (r) {
    case Rounding::down:
      return MPFR_RNDD;
    case Rounding::up:
      return MPFR_RNDU;
    case Rounding::nearest:
      break;
  }
  return MPFR_RNDN;
}

inline Rounding opposite(Rounding r) {
  if (r == Rounding::down) return Rounding::up;
  if (r == Rounding::up) return Rounding::down;
  return Rounding::nearest;
}

inline const char* to_string(Rounding r) {
  switch (r) {
    case Rounding::down:
      return "down";
    case Rounding::up:
      return "up";
    case Rounding::nearest:
      break;
  }
  return "nearest";
}

class ExtReal {
 public:
  explicit ExtReal(long prec = kDefaultPrecision) {
    mpfr_init2(v_, clamp(prec));
    mpfr_set_zero(v_, 1);
  }

  ExtReal(long value, long prec) {
    mpfr_init2(v_, clamp(prec));
    mpfr_set_si(v_, value, MPFR_RNDN);
  }

  ExtReal(const ExtReal& o) : rounding_(o.rounding_) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }

  ExtReal(ExtReal&& o) noexcept : rounding_(o.rounding_) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }

  ExtReal& operator=(const ExtReal& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
      rounding_ = o.rounding_;
    }
    return *this;
  }

  ExtReal& operator=(ExtReal&& o) noexcept {
    mpfr_swap(v_, o.v_);
    rounding_ = o.rounding_;
    return *this;
  }

  ~ExtReal() { mpfr_clear(v_); }

  static ExtReal from_double(double d, long prec) {
    ExtReal r(prec);
    mpfr_set_d(r.v_, d, MPFR_RNDN);
    return r;
  }

  static ExtReal from_int(const BigInt& z, long prec, Rounding rnd = Rounding::nearest) {
    ExtReal r(prec);
    mpfr_set_z(r.v_, z.get_mpz_t(), to_mpfr(rnd));
    r.rounding_ = rnd;
    return r;
  }

  static ExtReal from_rational(const BigRational& q, long prec,
                               Rounding rnd = Rounding::nearest) {
    ExtReal r(prec);
    mpfr_set_q(r.v_, q.get_mpq_t(), to_mpfr(rnd));
    r.rounding_ = rnd;
    return r;
  }

  static ExtReal infinity(long prec, int sign = 1) {
    ExtReal r(prec);
    mpfr_set_inf(r.v_, sign);
    return r;
  }

  static ExtReal pow2(long e, long prec) {
    ExtReal r(prec);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }

  long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }
  Rounding rounding() const { return rounding_; }
  void set_rounding(Rounding r) { rounding_ = r; }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }

  double to_double(Rounding rnd = Rounding::nearest) const {
    return mpfr_get_d(v_, to_mpfr(rnd));
  }

  /// Exact dyadic value. Requires a finite number.
  BigRational to_rational() const {
    if (!is_finite()) throw DomainError("to_rational: non-finite value");
    if (is_zero()) return BigRational(0);
    BigInt m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    BigRational q(m);
    if (e >= 0) {
      mpz_mul_2exp(q.get_num_mpz_t(), q.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
    } else {
      mpz_mul_2exp(q.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    }
    q.canonicalize();
    return q;
  }

  BigInt floor_int() const {
    if (!is_finite()) throw DomainError("floor_int: non-finite value");
    BigInt z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
    return z;
  }

  BigInt ceil_int() const {
    if (!is_finite()) throw DomainError("ceil_int: non-finite value");
    BigInt z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDU);
    return z;
  }

  std::string str(int digits = 20) const {
    if (is_nan()) return "nan";
    if (is_inf()) return sign() > 0 ? "inf" : "-inf";
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

  ExtReal& operator+=(const ExtReal& o) {
    widen(o);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    rounding_ = Rounding::nearest;
    return *this;
  }
  ExtReal& operator-=(const ExtReal& o) {
    widen(o);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    rounding_ = Rounding::nearest;
    return *this;
  }
  ExtReal& operator*=(const ExtReal& o) {
    widen(o);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    rounding_ = Rounding::nearest;
    return *this;
  }
  ExtReal& operator/=(const ExtReal& o) {
    widen(o);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    rounding_ = Rounding::nearest;
    return *this;
  }

 private:
  static mpfr_prec_t clamp(long prec) {
    return static_cast<mpfr_prec_t>(std::max(prec, kMinPrecision));
  }

  void widen(const ExtReal& o) {
    if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
  }

  mpfr_t v_;
  Rounding rounding_ = Rounding::nearest;
};

namespace detail {
inline long joint_prec(const ExtReal& a, const ExtReal& b) {
  return std::max(a.precision(), b.precision());
}
}  // namespace detail

#define CONDBOUND_EXT_BINARY(name, fn)                                                \
  inline ExtReal name(const ExtReal& a, const ExtReal& b,                             \
                      Rounding rnd = Rounding::nearest) {                             \
    ExtReal r(detail::joint_prec(a, b));                                              \
    fn(r.get(), a.get(), b.get(), to_mpfr(rnd));                                      \
    r.set_rounding(rnd);                                                              \
    return r;                                                                         \
  }

CONDBOUND_EXT_BINARY(add, mpfr_add)
CONDBOUND_EXT_BINARY(sub, mpfr_sub)
CONDBOUND_EXT_BINARY(mul, mpfr_mul)
CONDBOUND_EXT_BINARY(div, mpfr_div)
CONDBOUND_EXT_BINARY(hypot, mpfr_hypot)
CONDBOUND_EXT_BINARY(pow, mpfr_pow)

#undef CONDBOUND_EXT_BINARY

#define CONDBOUND_EXT_UNARY(name, fn)                                                 \
  inline ExtReal name(const ExtReal& a, Rounding rnd = Rounding::nearest) {           \
    ExtReal r(a.precision());                                                         \
    fn(r.get(), a.get(), to_mpfr(rnd));                                               \
    r.set_rounding(rnd);                                                              \
    return r;                                                                         \
  }

CONDBOUND_EXT_UNARY(sqrt, mpfr_sqrt)
CONDBOUND_EXT_UNARY(log2, mpfr_log2)
CONDBOUND_EXT_UNARY(exp2, mpfr_exp2)
CONDBOUND_EXT_UNARY(abs, mpfr_abs)
CONDBOUND_EXT_UNARY(sqr, mpfr_sqr)

#undef CONDBOUND_EXT_UNARY

inline ExtReal mul_si(const ExtReal& a, long k, Rounding rnd = Rounding::nearest) {
  ExtReal r(a.precision());
  mpfr_mul_si(r.get(), a.get(), k, to_mpfr(rnd));
  r.set_rounding(rnd);
  return r;
}

inline ExtReal div_si(const ExtReal& a, long k, Rounding rnd = Rounding::nearest) {
  ExtReal r(a.precision());
  mpfr_div_si(r.get(), a.get(), k, to_mpfr(rnd));
  r.set_rounding(rnd);
  return r;
}

inline ExtReal add_si(const ExtReal& a, long k, Rounding rnd = Rounding::nearest) {
  ExtReal r(a.precision());
  mpfr_add_si(r.get(), a.get(), k, to_mpfr(rnd));
  r.set_rounding(rnd);
  return r;
}

/// a * 2^e, exact.
inline ExtReal ldexp(const ExtReal& a, long e) {
  ExtReal r(a.precision());
  mpfr_mul_2si(r.get(), a.get(), e, MPFR_RNDN);
  r.set_rounding(a.rounding());
  return r;
}

inline ExtReal pow_ui(const ExtReal& a, unsigned long e, Rounding rnd = Rounding::nearest) {
  ExtReal r(a.precision());
  mpfr_pow_ui(r.get(), a.get(), e, to_mpfr(rnd));
  r.set_rounding(rnd);
  return r;
}

/// Change precision, rounding as requested.
inline ExtReal with_precision(const ExtReal& a, long prec, Rounding rnd = Rounding::nearest) {
  ExtReal r(prec);
  mpfr_set(r.get(), a.get(), to_mpfr(rnd));
  r.set_rounding(rnd);
  return r;
}

inline ExtReal operator+(const ExtReal& a, const ExtReal& b) { return add(a, b); }
inline ExtReal operator-(const ExtReal& a, const ExtReal& b) { return sub(a, b); }
inline ExtReal operator*(const ExtReal& a, const ExtReal& b) { return mul(a, b); }
inline ExtReal operator/(const ExtReal& a, const ExtReal& b) { return div(a, b); }
inline ExtReal operator-(const ExtReal& a) {
  ExtReal r(a.precision());
  mpfr_neg(r.get(), a.get(), MPFR_RNDN);
  r.set_rounding(opposite(a.rounding()));
  return r;
}

inline bool operator<(const ExtReal& a, const ExtReal& b) { return mpfr_less_p(a.get(), b.get()); }
inline bool operator>(const ExtReal& a, const ExtReal& b) { return mpfr_greater_p(a.get(), b.get()); }
inline bool operator<=(const ExtReal& a, const ExtReal& b) { return mpfr_lessequal_p(a.get(), b.get()); }
inline bool operator>=(const ExtReal& a, const ExtReal& b) {
  return mpfr_greaterequal_p(a.get(), b.get());
}
inline bool operator==(const ExtReal& a, const ExtReal& b) { return mpfr_equal_p(a.get(), b.get()); }
inline bool operator!=(const ExtReal& a, const ExtReal& b) { return !(a == b); }

inline const ExtReal& min(const ExtReal& a, const ExtReal& b) { return b < a ? b : a; }
inline const ExtReal& max(const ExtReal& a, const ExtReal& b) { return a < b ? b : a; }

/// Complex value with ExtReal parts; arithmetic rounds to nearest.
struct ExtComplex {
  ExtReal re;
  ExtReal im;

  explicit ExtComplex(long prec = kDefaultPrecision) : re(prec), im(prec) {}
  ExtComplex(ExtReal r, ExtReal i) : re(std::move(r)), im(std::move(i)) {}

  static ExtComplex real(const ExtReal& r) { return {r, ExtReal(r.precision())}; }

  long precision() const { return std::max(re.precision(), im.precision()); }
  bool is_real() const { return im.is_zero(); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  ExtComplex& operator+=(const ExtComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ExtComplex& operator-=(const ExtComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
};

inline ExtComplex operator+(const ExtComplex& a, const ExtComplex& b) {
  return {a.re + b.re, a.im + b.im};
}
inline ExtComplex operator-(const ExtComplex& a, const ExtComplex& b) {
  return {a.re - b.re, a.im - b.im};
}
inline ExtComplex operator-(const ExtComplex& a) { return {-a.re, -a.im}; }

inline ExtComplex operator*(const ExtComplex& a, const ExtComplex& b) {
  if (a.im.is_zero() && b.im.is_zero()) return {a.re * b.re, ExtReal(a.precision())};
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline ExtComplex operator*(const ExtComplex& a, const ExtReal& s) { return {a.re * s, a.im * s}; }

inline ExtComplex operator/(const ExtComplex& a, const ExtComplex& b) {
  if (b.im.is_zero()) return {a.re / b.re, a.im / b.re};
  ExtReal den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

inline ExtComplex operator/(const ExtComplex& a, const ExtReal& s) { return {a.re / s, a.im / s}; }

inline ExtComplex conj(const ExtComplex& z) { return {z.re, -z.im}; }

inline ExtReal abs(const ExtComplex& z, Rounding rnd = Rounding::nearest) {
  return hypot(z.re, z.im, rnd);
}

inline ExtReal norm_sq(const ExtComplex& z) { return z.re * z.re + z.im * z.im; }

inline std::string to_string(const ExtComplex& z, int digits = 20) {
  if (z.im.is_zero()) return z.re.str(digits);
  std::string s = z.re.str(digits);
  s += z.im.sign() < 0 ? "-" : "+";
  s += abs(z.im).str(digits);
  s += "i";
  return s;
}

/// Closed interval [lo, hi] with outward-rounded endpoints.
struct Interval {
  ExtReal lo;
  ExtReal hi;

  static Interval point(const ExtReal& x) { return {x, x}; }
  static Interval around(const ExtReal& center, const ExtReal& radius) {
    return {sub(center, radius, Rounding::down), add(center, radius, Rounding::up)};
  }
  static Interval from_rational(const BigRational& q, long prec) {
    return {ExtReal::from_rational(q, prec, Rounding::down),
            ExtReal::from_rational(q, prec, Rounding::up)};
  }
  static Interval from_int(const BigInt& z, long prec) {
    return {ExtReal::from_int(z, prec, Rounding::down), ExtReal::from_int(z, prec, Rounding::up)};
  }

  long precision() const { return std::max(lo.precision(), hi.precision()); }
  bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
  bool is_point() const { return lo == hi; }
  bool overlaps(const Interval& o) const { return !(hi < o.lo || o.hi < lo); }
  ExtReal mid() const { return ldexp(lo + hi, -1); }
  ExtReal width() const { return sub(hi, lo, Rounding::up); }
};

inline Interval operator+(const Interval& a, const Interval& b) {
  return {add(a.lo, b.lo, Rounding::down), add(a.hi, b.hi, Rounding::up)};
}

inline Interval operator-(const Interval& a, const Interval& b) {
  return {sub(a.lo, b.hi, Rounding::down), sub(a.hi, b.lo, Rounding::up)};
}

inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

inline Interval operator*(const Interval& a, const Interval& b) {
  if (a.lo.sign() >= 0 && b.lo.sign() >= 0) {
    return {mul(a.lo, b.lo, Rounding::down), mul(a.hi, b.hi, Rounding::up)};
  }
  const ExtReal* xs[2] = {&a.lo, &a.hi};
  const ExtReal* ys[2] = {&b.lo, &b.hi};
  ExtReal lo = ExtReal::infinity(a.precision(), 1);
  ExtReal hi = ExtReal::infinity(a.precision(), -1);
  for (const ExtReal* x : xs) {
    for (const ExtReal* y : ys) {
      ExtReal d = mul(*x, *y, Rounding::down);
      ExtReal u = mul(*x, *y, Rounding::up);
      if (d < lo) lo = d;
      if (u > hi) hi = u;
    }
  }
  return {lo, hi};
}

/// Division; a divisor containing zero yields the whole line.
inline Interval operator/(const Interval& a, const Interval& b) {
  long p = std::max(a.precision(), b.precision());
  if (b.contains_zero()) return {ExtReal::infinity(p, -1), ExtReal::infinity(p, 1)};
  const ExtReal* xs[2] = {&a.lo, &a.hi};
  const ExtReal* ys[2] = {&b.lo, &b.hi};
  ExtReal lo = ExtReal::infinity(p, 1);
  ExtReal hi = ExtReal::infinity(p, -1);
  for (const ExtReal* x : xs) {
    for (const ExtReal* y : ys) {
      ExtReal d = div(*x, *y, Rounding::down);
      ExtReal u = div(*x, *y, Rounding::up);
      if (d < lo) lo = d;
      if (u > hi) hi = u;
    }
  }
  return {lo, hi};
}

/// sqrt over the nonnegative part.
inline Interval sqrt(const Interval& a) {
  ExtReal lo = a.lo.sign() <= 0 ? ExtReal(a.precision()) : sqrt(a.lo, Rounding::down);
  ExtReal hi = a.hi.sign() <= 0 ? ExtReal(a.precision()) : sqrt(a.hi, Rounding::up);
  return {lo, hi};
}

/// log2 over the positive part; a nonpositive lower end maps to -inf.
inline Interval log2(const Interval& a) {
  ExtReal lo = a.lo.sign() <= 0 ? ExtReal::infinity(a.precision(), -1) : log2(a.lo, Rounding::down);
  ExtReal hi = a.hi.sign() <= 0 ? ExtReal::infinity(a.precision(), -1) : log2(a.hi, Rounding::up);
  return {lo, hi};
}

inline Interval abs(const Interval& a) {
  if (a.lo.sign() >= 0) return a;
  if (a.hi.sign() <= 0) return -a;
  return {ExtReal(a.precision()), max(-a.lo, a.hi)};
}

inline Interval hull(const Interval& a, const Interval& b) { return {min(a.lo, b.lo), max(a.hi, b.hi)}; }

}  // namespace condbound

#endif  // CONDBOUND_NUMCORE_EXT_REAL_HPP
