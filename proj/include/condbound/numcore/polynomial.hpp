#ifndef CONDBOUND_NUMCORE_POLYNOMIAL_HPP
#define CONDBOUND_NUMCORE_POLYNOMIAL_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "condbound/numcore/bigint.hpp"
#include "condbound/numcore/errors.hpp"

namespace condbound {

/// Univariate polynomial with exact integer coefficients; coeffs()[i] is the
/// coefficient of x^i. The zero polynomial has no coefficients and degree -1.
class IntPolynomial {
 public:
  IntPolynomial() = default;

  explicit IntPolynomial(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

  /// Lowest degree first: {f0, f1, ..., fd}.
  IntPolynomial(std::initializer_list<long> low_first) {
    for (long v : low_first) c_.emplace_back(v);
    trim();
  }

  /// Highest degree first, as written: {fd, ..., f1, f0}.
  static IntPolynomial from_high_first(const std::vector<BigInt>& high_first) {
    std::vector<BigInt> c(high_first.rbegin(), high_first.rend());
    return IntPolynomial(std::move(c));
  }

  /// Parses the inline format "c_d,...,c_0".
  static IntPolynomial parse(const std::string& text) {
    std::vector<BigInt> hf;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char ch) { return std::isspace(ch); }),
                tok.end());
      if (tok.empty()) throw DomainError("polynomial: empty coefficient in '" + text + "'");
      if (tok[0] == '+') tok.erase(0, 1);
      BigInt v;
      if (v.set_str(tok, 10) != 0) throw DomainError("polynomial: bad integer '" + tok + "'");
      hf.push_back(v);
    }
    if (hf.empty()) throw DomainError("polynomial: no coefficients");
    return from_high_first(hf);
  }

  static IntPolynomial monomial(const BigInt& c, std::size_t k) {
    std::vector<BigInt> v(k + 1, BigInt(0));
    v[k] = c;
    return IntPolynomial(std::move(v));
  }

  static IntPolynomial constant(const BigInt& c) { return IntPolynomial(std::vector<BigInt>{c}); }

  /// Monic polynomial with the given integer roots.
  static IntPolynomial from_roots(const std::vector<BigInt>& roots) {
    IntPolynomial p = constant(1);
    for (const auto& r : roots) p = p * IntPolynomial(std::vector<BigInt>{BigInt(-r), BigInt(1)});
    return p;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<BigInt>& coeffs() const { return c_; }

  /// Coefficient of x^i (zero beyond the degree).
  BigInt operator[](std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }
  const BigInt& leading() const { return c_.back(); }

  BigInt max_abs_coeff() const {
    BigInt h = 0;
    for (const auto& v : c_)
      if (abs(v) > h) h = abs(v);
    return h;
  }

  /// Nonzero coefficient count.
  std::size_t support_size() const {
    return static_cast<std::size_t>(std::count_if(c_.begin(), c_.end(), [](const BigInt& v) { return v != 0; }));
  }

  BigInt content() const {
    BigInt g = 0;
    for (const auto& v : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    return g;
  }

  /// Divides out the content; leading coefficient made positive.
  IntPolynomial primitive_part() const {
    if (is_zero()) return *this;
    BigInt g = content();
    if (leading() < 0) g = -g;
    std::vector<BigInt> c(c_);
    for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    return IntPolynomial(std::move(c));
  }

  IntPolynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<BigInt> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return IntPolynomial(std::move(d));
  }

  BigInt eval(const BigInt& x) const {
    BigInt r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }

  BigRational eval(const BigRational& x) const {
    BigRational r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + BigRational(c_[i]);
    return r;
  }

  /// Largest k with x^k dividing this polynomial.
  std::size_t zero_root_multiplicity() const {
    std::size_t k = 0;
    while (k < c_.size() && c_[k] == 0) ++k;
    return k;
  }

  IntPolynomial shift_down(std::size_t k) const {
    if (k >= c_.size()) return {};
    return IntPolynomial(std::vector<BigInt>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
  }

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> c(std::max(a.c_.size(), b.c_.size()), BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return IntPolynomial(std::move(c));
  }

  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> c(std::max(a.c_.size(), b.c_.size()), BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return IntPolynomial(std::move(c));
  }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> c(a.c_.size() + b.c_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return IntPolynomial(std::move(c));
  }

  friend IntPolynomial operator*(const BigInt& s, const IntPolynomial& a) {
    std::vector<BigInt> c(a.c_);
    for (auto& v : c) v *= s;
    return IntPolynomial(std::move(c));
  }

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }

  /// "c_d,...,c_0", the inline CLI format.
  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      s += c_[i].get_str();
      if (i) s += ',';
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<BigInt> c_;
};

/// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b.
inline IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw DomainError("pseudo_remainder: division by zero polynomial");
  std::vector<BigInt> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  const BigInt& lb = bc.back();
  while (r.size() > db && !r.empty()) {
    BigInt lr = r.back();
    std::size_t shift = r.size() - 1 - db;
    for (auto& v : r) v *= lb;
    for (std::size_t i = 0; i <= db; ++i) r[i + shift] -= lr * bc[i];
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  return IntPolynomial(std::move(r));
}

/// Quotient a / b where b divides a exactly in Z[x]; throws otherwise.
inline IntPolynomial divide_exact(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw DomainError("divide_exact: division by zero polynomial");
  if (a.is_zero()) return {};
  if (a.degree() < b.degree()) throw DomainError("divide_exact: not divisible");
  std::vector<BigInt> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  std::vector<BigInt> q(r.size() - db, BigInt(0));
  for (std::size_t k = q.size(); k-- > 0;) {
    const BigInt& top = r[k + db];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), bc.back().get_mpz_t())) throw DomainError("divide_exact: not divisible");
    BigInt qk;
    mpz_divexact(qk.get_mpz_t(), top.get_mpz_t(), bc.back().get_mpz_t());
    for (std::size_t i = 0; i <= db; ++i) r[k + i] -= qk * bc[i];
    q[k] = qk;
  }
  for (std::size_t i = 0; i < db && i < r.size(); ++i)
    if (r[i] != 0) throw DomainError("divide_exact: not divisible");
  return IntPolynomial(std::move(q));
}

/// Primitive gcd with positive leading coefficient (primitive PRS).
inline IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero()) return b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  IntPolynomial x = a.primitive_part();
  IntPolynomial y = b.primitive_part();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    IntPolynomial r = pseudo_remainder(x, y);
    x = std::move(y);
    y = r.primitive_part();
  }
  return x.primitive_part();
}

inline bool is_squarefree(const IntPolynomial& f) {
  if (f.degree() <= 1) return !f.is_zero();
  return gcd(f, f.derivative()).degree() == 0;
}

/// One squarefree factor: the roots of `factor` are exactly the roots of f
/// with multiplicity `multiplicity`.
struct SquarefreeFactor {
  IntPolynomial factor;
  unsigned multiplicity;
};

/// Squarefree decomposition (Musser), factors primitive with positive
/// leading coefficient, increasing multiplicity. Constant input gives {}.
inline std::vector<SquarefreeFactor> squarefree_decomposition(const IntPolynomial& f) {
  if (f.is_zero()) throw DomainError("squarefree_decomposition: zero polynomial");
  std::vector<SquarefreeFactor> out;
  if (f.degree() == 0) return out;
  IntPolynomial fp = f.primitive_part();
  if (fp.degree() == 1) {
    out.push_back({fp, 1});
    return out;
  }
  IntPolynomial c = gcd(fp, fp.derivative());
  IntPolynomial w = divide_exact(fp, c).primitive_part();
  unsigned i = 1;
  while (w.degree() > 0) {
    IntPolynomial y = gcd(w, c);
    IntPolynomial z = divide_exact(w, y).primitive_part();
    if (z.degree() > 0) out.push_back({z, i});
    w = y;
    c = divide_exact(c, y).primitive_part();
    ++i;
  }
  return out;
}

/// Product of the distinct irreducible factors: same roots, all simple.
inline IntPolynomial squarefree_part(const IntPolynomial& f) {
  if (f.degree() <= 1) return f.primitive_part();
  IntPolynomial g = gcd(f, f.derivative());
  return divide_exact(f.primitive_part(), g).primitive_part();
}

}  // namespace condbound

#endif  // CONDBOUND_NUMCORE_POLYNOMIAL_HPP
