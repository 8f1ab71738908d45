#ifndef CONDBOUND_NUMCORE_BIGINT_HPP
#define CONDBOUND_NUMCORE_BIGINT_HPP

#include <gmpxx.h>

#include <cstddef>
#include <string>

namespace condbound {

using BigInt = mpz_class;

/// Exact rational; always kept canonical (gcd(num, den) == 1, den > 0).
using BigRational = mpq_class;

inline BigRational make_rational(const BigInt& num, const BigInt& den) {
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

inline BigInt abs_value(const BigInt& x) { return abs(x); }

inline std::size_t bit_length(const BigInt& x) {
  return sgn(x) == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2);
}

inline BigInt ipow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline BigRational rpow(const BigRational& base, unsigned long e) {
  BigRational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  r.canonicalize();
  return r;
}

inline BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline std::string to_string(const BigInt& x) { return x.get_str(); }
inline std::string to_string(const BigRational& q) { return q.get_str(); }

}  // namespace condbound

#endif  // CONDBOUND_NUMCORE_BIGINT_HPP
