#ifndef CONDBOUND_GRAEFFE_HPP
#define CONDBOUND_GRAEFFE_HPP

#include <optional>
#include <string>
#include <vector>

#include "condbound/bounds.hpp"
#include "condbound/condition.hpp"
#include "condbound/numcore.hpp"

namespace condbound {

inline constexpr std::size_t kDefaultBitBudget = std::size_t{1} << 20;

/// Total bit length of all coefficients.
inline std::size_t coefficient_bits(const IntPolynomial& f) {
  std::size_t s = 0;
  for (const auto& c : f.coeffs()) s += bit_length(c);
  return s;
}

/// Gf(x) = (-1)^d f(√x) f(-√x) = (-1)^d (fe² - x fo²) for f = fe(x²) + x fo(x²).
inline IntPolynomial graeffe_step(const IntPolynomial& f, std::size_t bit_budget = kDefaultBitBudget) {
  if (f.is_zero()) return f;
  const auto& c = f.coeffs();
  std::vector<BigInt> ev, od;
  for (std::size_t i = 0; i < c.size(); ++i) (i % 2 == 0 ? ev : od).push_back(c[i]);
  IntPolynomial fe(ev), fo(od);
  IntPolynomial g = fe * fe - IntPolynomial::monomial(BigInt(1), 1) * (fo * fo);
  if (f.degree() % 2 == 1) g = BigInt(-1) * g;
  std::size_t bits = coefficient_bits(g);
  if (bits > bit_budget)
    throw BudgetError("graeffe_step: coefficients need " + std::to_string(bits) + " bits, budget is " +
                          std::to_string(bit_budget) + "; lower k or raise the bit budget",
                      bits, bit_budget);
  return g;
}

struct GraeffeState {
  IntPolynomial f;
  unsigned long k = 0;
  IntPolynomial g;
  std::size_t bit_budget = kDefaultBitBudget;
};

inline GraeffeState iterate(const IntPolynomial& f, unsigned long k, std::size_t bit_budget = kDefaultBitBudget) {
  GraeffeState s{f, 0, f, bit_budget};
  for (; s.k < k; ++s.k) s.g = graeffe_step(s.g, bit_budget);
  return s;
}

struct RecoveryResult {
  std::vector<ExtReal> roots;  // descending
  std::vector<ExtReal> log2_claimed_error;
  unsigned long k_used = 0;
  std::string claim = "delta_i'' <= 2^(d+1-k) / ratio(g) + h.o.t.";
};

namespace detail {

/// Exact a^{1/2^k} when a is a perfect power, else nullopt.
inline std::optional<BigInt> exact_root_pow2(const BigInt& a, unsigned long k) {
  if (k >= 64) return std::nullopt;
  BigInt r;
  if (mpz_root(r.get_mpz_t(), a.get_mpz_t(), 1UL << k) != 0) return r;
  return std::nullopt;
}

}  // namespace detail

/// ζ_i ≈ (|g_{d-i}| / |g_{d-i+1}|)^{2^{-k}}, evaluated in the log2 domain.
/// `displayed_orientation` uses the inverted ratio g_{d-i+1} / g_{d-i}
/// for comparison.
inline RecoveryResult recover_roots(const GraeffeState& s, long prec = kDefaultPrecision,
                                    bool displayed_orientation = false) {
  const int d = s.g.degree();
  if (d < 1) throw DomainError("recover_roots: polynomial has no roots");
  RecoveryResult out;
  out.k_used = s.k;
  std::optional<Interval> log2_ratio_f;
  if (d >= 2) {
    ConditionValue gap = relgap_poly(s.f, prec);
    if (!gap.infinite) {
      Interval one = Interval::from_int(BigInt(1), prec);
      log2_ratio_f = log2(one + gap.value);
    }
  }
  for (int i = 1; i <= d; ++i) {
    BigInt num = abs(s.g[static_cast<std::size_t>(d - i)]);
    BigInt den = abs(s.g[static_cast<std::size_t>(d - i + 1)]);
    if (displayed_orientation) std::swap(num, den);
    if (num == 0 || den == 0)
      throw VerificationFailure("recover_roots: zero coefficient in the ratio for root " + std::to_string(i));
    std::optional<BigInt> exact;
    if (num % den == 0) exact = detail::exact_root_pow2(BigInt(num / den), s.k);
    if (exact) {
      out.roots.push_back(ExtReal::from_int(*exact, prec));
    } else {
      ExtReal l = log2(ExtReal::from_int(num, prec)) - log2(ExtReal::from_int(den, prec));
      out.roots.push_back(exp2(ldexp(l, -static_cast<long>(s.k))));
    }
    // log2 of 2^{d+1-k} / ratio(f)^{2^k}
    ExtReal claim(static_cast<long>(d + 1) - static_cast<long>(s.k), prec);
    if (log2_ratio_f) claim = sub(claim, ldexp(log2_ratio_f->lo, static_cast<long>(s.k)), Rounding::up);
    out.log2_claimed_error.push_back(claim);
  }
  return out;
}

struct IterationPrediction {
  unsigned long k = 0;
  unsigned long k1 = 0;
  unsigned long k2 = 0;
  bool infinite_gap = false;
};

namespace detail {

/// Smallest k >= 0 with 2^k >= q.
inline unsigned long ceil_log2(const BigRational& q) {
  if (q <= 1) return 0;
  BigInt c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return static_cast<unsigned long>(bit_length(BigInt(c - 1)));
}

inline unsigned long ceil_nonneg(const ExtReal& x) {
  if (x.sign() <= 0) return 0;
  return x.ceil_int().get_ui();
}

/// ⌈log2(d + 1 + log2 δ⁻¹)⌉.
inline unsigned long graeffe_k2(unsigned long d, const BigRational& delta, long prec) {
  if (delta <= 0 || delta >= 1) throw DomainError("predict_iterations: delta must lie in (0, 1)");
  ExtReal inv = ExtReal::from_rational(BigRational(1) / delta, prec, Rounding::up);
  ExtReal t = add(log2(inv, Rounding::up), ExtReal(static_cast<long>(d + 1), prec), Rounding::up);
  return ceil_nonneg(log2(t, Rounding::up));
}

}  // namespace detail

/// k = ⌈log2 relgap(f)⁻¹⌉ + ⌈log2(d + 1 + log2 δ⁻¹)⌉ + 1.
inline IterationPrediction predict_iterations(const IntPolynomial& f, const BigRational& delta,
                                              long prec = kDefaultPrecision) {
  if (f.degree() < 1) throw DomainError("predict_iterations: degree must be at least 1");
  const unsigned long d = static_cast<unsigned long>(f.degree());
  IterationPrediction p;
  p.k2 = detail::graeffe_k2(d, delta, prec);
  if (d == 1) {
    p.infinite_gap = true;
  } else {
    ConditionValue gap = relgap_poly(f, prec);
    if (gap.infinite) {
      p.infinite_gap = true;
    } else if (gap.exact) {
      p.k1 = detail::ceil_log2(BigRational(1) / *gap.exact);
    } else {
      p.k1 = detail::ceil_nonneg(-gap.log2_value);
    }
  }
  p.k = p.k1 + p.k2 + 1;
  return p;
}

/// Same predictor with relgap replaced by its lower bound (8H)^{-2d}.
inline IterationPrediction predict_iterations_apriori(unsigned long d, const BigInt& h, const BigRational& delta,
                                                      long prec = kDefaultPrecision) {
  IterationPrediction p;
  p.k1 = detail::ceil_log2(BigRational(1) / thm7_rational(d, h));
  p.k2 = detail::graeffe_k2(d, delta, prec);
  p.k = p.k1 + p.k2 + 1;
  return p;
}

/// ratio(f) = min over adjacent distinct moduli |ζ_i| / |ζ_{i+1}|, as a log2
/// enclosure; nullopt when all nonzero roots share one modulus.
inline std::optional<Interval> log2_ratio(const IntPolynomial& f, long prec = kDefaultPrecision) {
  ConditionValue gap = relgap_poly(f, prec);
  if (gap.infinite) return std::nullopt;
  return log2(Interval::from_int(BigInt(1), gap.value.precision()) + gap.value);
}

}  // namespace condbound

#endif  // CONDBOUND_GRAEFFE_HPP
