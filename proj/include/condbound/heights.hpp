#ifndef CONDBOUND_HEIGHTS_HPP
#define CONDBOUND_HEIGHTS_HPP

#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "condbound/numcore.hpp"

namespace condbound {

/// H(x) >= 1, stored as a round-up log2. For rational input the value is
/// exact and also kept as an integer.
struct HeightValue {
  ExtReal log2_height;
  bool exact_flag = true;
  BigInt value;
};

inline HeightValue make_height(const BigInt& h, long prec = kDefaultPrecision) {
  return {log2(ExtReal::from_int(h, prec, Rounding::up), Rounding::up), true, h};
}

/// H(u) = max |u_i| for a nonzero integer vector.
inline HeightValue height_int_vector(const IntVector& u) {
  BigInt h = max_abs_entry(u);
  if (h == 0) throw DomainError("height: zero vector");
  return make_height(h);
}

inline BigInt lcm_of_denominators(const RatVector& v) {
  BigInt m = 1;
  for (const auto& x : v) mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), x.get_den_mpz_t());
  return m;
}

/// H(v) = max(|m v_i|, |m|) with m the lcm of the denominators.
inline HeightValue height_rational_vector(const RatVector& v) {
  bool nonzero = false;
  for (const auto& x : v) nonzero = nonzero || x != 0;
  if (!nonzero) throw DomainError("height: zero vector");
  BigInt m = lcm_of_denominators(v);
  BigInt h = m;
  for (const auto& x : v) {
    BigInt t = m / x.get_den() * abs(x.get_num());
    if (t > h) h = t;
  }
  return make_height(h);
}

inline HeightValue height_rational(const BigRational& x) {
  BigInt h = abs(x.get_num()) > x.get_den() ? BigInt(abs(x.get_num())) : BigInt(x.get_den());
  return make_height(h);
}

inline HeightValue height_matrix(const IntMatrix& a) { return height_int_vector(a.entries()); }
inline HeightValue height_matrix(const RatMatrix& a) { return height_rational_vector(a.entries()); }

/// One monomial c * x_0^{e_0} ... x_n^{e_n}.
struct Monomial {
  BigInt coeff;
  std::vector<unsigned> exps;
};

/// Sparse homogeneous integer polynomial in `nvars` variables.
struct HomPoly {
  std::size_t nvars = 0;
  unsigned degree = 0;
  std::vector<Monomial> terms;

  /// Number of nonzero coefficients.
  std::size_t support() const {
    std::size_t s = 0;
    for (const auto& t : terms) s += t.coeff != 0;
    return s;
  }

  BigInt max_abs_coeff() const {
    BigInt h = 0;
    for (const auto& t : terms)
      if (abs(t.coeff) > h) h = abs(t.coeff);
    return h;
  }

  void validate() const {
    for (const auto& t : terms) {
      if (t.exps.size() != nvars) throw DimensionError("HomPoly: exponent vector length != nvars");
      unsigned s = std::accumulate(t.exps.begin(), t.exps.end(), 0u);
      if (s != degree) throw DomainError("HomPoly: monomial of degree " + std::to_string(s) + " in a degree " +
                                         std::to_string(degree) + " homogeneous polynomial");
    }
  }
};

/// F = (F_1, ..., F_n) in n+1 homogeneous variables.
struct HomogeneousSystem {
  std::size_t n = 0;
  std::vector<HomPoly> polys;

  std::vector<unsigned> degrees() const {
    std::vector<unsigned> d;
    for (const auto& p : polys) d.push_back(p.degree);
    return d;
  }
  unsigned max_degree() const {
    unsigned d = 0;
    for (const auto& p : polys) d = std::max(d, p.degree);
    return d;
  }
  std::size_t max_support() const {
    std::size_t s = 0;
    for (const auto& p : polys) s = std::max(s, p.support());
    return s;
  }
  BigInt max_abs_coeff() const {
    BigInt h = 0;
    for (const auto& p : polys)
      if (p.max_abs_coeff() > h) h = p.max_abs_coeff();
    return h;
  }

  void validate() const {
    if (polys.size() != n) throw DimensionError("HomogeneousSystem: expected n polynomials");
    for (const auto& p : polys) {
      if (p.nvars != n + 1) throw DimensionError("HomogeneousSystem: polynomials must use n+1 variables");
      p.validate();
    }
  }
};

struct BombieriNorm {
  BigRational norm_squared;
};

/// d! / (J_0! ... J_n!)
inline BigInt multinomial(unsigned d, const std::vector<unsigned>& j) {
  BigInt r = factorial(d);
  for (unsigned e : j) r /= factorial(e);
  return r;
}

/// ‖G‖² = sum_J |G_J|² / binom(d, J). Repeated exponent vectors are merged.
inline BombieriNorm bombieri_norm(const HomPoly& g) {
  g.validate();
  std::map<std::vector<unsigned>, BigInt> merged;
  for (const auto& t : g.terms) merged[t.exps] += t.coeff;
  BigRational s = 0;
  for (const auto& [e, c] : merged) s += BigRational(c * c, multinomial(g.degree, e));
  s.canonicalize();
  return {s};
}

inline BombieriNorm bombieri_norm(const std::vector<Monomial>& terms, unsigned d, std::size_t nvars) {
  return bombieri_norm(HomPoly{nvars, d, terms});
}

/// ‖F‖² = sum ‖F_i‖².
inline BombieriNorm system_norm(const HomogeneousSystem& f) {
  BigRational s = 0;
  for (const auto& p : f.polys) s += bombieri_norm(p).norm_squared;
  s.canonicalize();
  return {s};
}

// Checkable consequences of the height propositions. Each returns true when
// the assertion holds and fills `witness` otherwise.

/// Every nonzero root ζ of f has (2H)^{-d} <= |ζ| <= (2H)^d, H = max |f_i|.
inline bool check_root_moduli(const IntPolynomial& f, std::string& witness, long prec = kDefaultPrecision) {
  if (f.degree() < 1) return true;
  const unsigned long d = static_cast<unsigned long>(f.degree());
  BigInt r = ipow(BigInt(2) * f.max_abs_coeff(), d);
  const long ceiling = max_precision_bits();
  for (long p = prec; p <= ceiling; p *= 2) {
    bool undecided = false;
    for (const auto& z : poly_roots(f, p)) {
      if (z.exact() && z.value.is_zero()) continue;
      Interval m = z.modulus();
      Interval up = Interval::from_int(r, p);
      Interval down = Interval::from_rational(BigRational(1, r), p);
      if (m.lo > up.hi || m.hi < down.lo) {
        witness = "f=" + f.str() + " root=" + to_string(z.value) + " outside [(2H)^-d, (2H)^d], (2H)^d=" + r.get_str();
        return false;
      }
      if (m.hi > up.lo || m.lo < down.hi) undecided = true;
    }
    if (!undecided) return true;
  }
  throw PrecisionError("check_root_moduli: undecided for " + f.str(), ceiling);
}

/// H(x_1) <= H(x_1..x_n) <= prod H(x_i).
inline bool check_coordinate(const RatVector& v, std::string& witness) {
  bool nonzero = false;
  for (const auto& x : v) nonzero = nonzero || x != 0;
  if (!nonzero) return true;
  BigInt hv = height_rational_vector(v).value;
  BigInt prod = 1;
  for (const auto& x : v) prod *= height_rational(x).value;
  for (const auto& x : v) {
    if (height_rational(x).value > hv) {
      witness = "coordinate height exceeds vector height: x=" + x.get_str() + " v=" + to_string(v);
      return false;
    }
  }
  if (hv > prod) {
    witness = "H(v)=" + hv.get_str() + " > prod H(v_i)=" + prod.get_str() + " v=" + to_string(v);
    return false;
  }
  return true;
}

/// H(x²) = H(x)².
inline bool check_square(const BigRational& x, std::string& witness) {
  BigInt h = height_rational(x).value;
  BigInt h2 = height_rational(x * x).value;
  if (h2 != h * h) {
    witness = "H(x^2)=" + h2.get_str() + " != H(x)^2=" + BigInt(h * h).get_str() + " x=" + x.get_str();
    return false;
  }
  return true;
}

/// H(sum x_i) <= n prod H(x_i) and H(prod x_i) <= prod H(x_i).
inline bool check_sum_product(const RatVector& v, std::string& witness) {
  if (v.empty()) return true;
  BigRational s = 0, p = 1;
  BigInt hp = 1;
  for (const auto& x : v) {
    s += x;
    p *= x;
    hp *= height_rational(x).value;
  }
  BigInt hs = height_rational(s).value;
  BigInt hprod = height_rational(p).value;
  if (hs > BigInt(static_cast<unsigned long>(v.size())) * hp) {
    witness = "H(sum)=" + hs.get_str() + " > n prod H=" + BigInt(BigInt(static_cast<unsigned long>(v.size())) * hp).get_str() +
              " v=" + to_string(v);
    return false;
  }
  if (hprod > hp) {
    witness = "H(prod)=" + hprod.get_str() + " > prod H=" + hp.get_str() + " v=" + to_string(v);
    return false;
  }
  return true;
}

struct HeightSamples {
  std::vector<IntPolynomial> polys;
  std::vector<RatVector> vectors;
};

struct HeightReport {
  std::size_t root_checks = 0;
  std::size_t coordinate_checks = 0;
  std::size_t square_checks = 0;
  std::size_t sum_product_checks = 0;
};

/// Runs every check; the first violated assertion throws VerificationFailure
/// with its witness.
inline HeightReport check_height_propositions(const HeightSamples& samples) {
  HeightReport rep;
  std::string w;
  for (const auto& f : samples.polys) {
    if (!check_root_moduli(f, w)) throw VerificationFailure(w);
    ++rep.root_checks;
  }
  for (const auto& v : samples.vectors) {
    if (!check_coordinate(v, w)) throw VerificationFailure(w);
    ++rep.coordinate_checks;
    for (const auto& x : v) {
      if (!check_square(x, w)) throw VerificationFailure(w);
      ++rep.square_checks;
    }
    if (!check_sum_product(v, w)) throw VerificationFailure(w);
    ++rep.sum_product_checks;
  }
  return rep;
}

/// Inverse-matrix height check for invertible integer A: H(A^{-1}) against
/// n! H(A)^n (what the proof derives) and n H(A)^n (what the statement says).
struct InverseHeightCheck {
  BigInt inverse_height;
  BigInt factorial_form;
  BigInt linear_form;
  bool factorial_holds;
  bool linear_holds;
};

inline InverseHeightCheck check_inverse_height(const IntMatrix& a) {
  if (determinant(a) == 0) throw DegenerateInstance("check_inverse_height: singular matrix");
  const unsigned long n = a.rows();
  BigInt h = max_abs_entry(a);
  BigInt hinv = height_matrix(exact_inverse(a)).value;
  BigInt fac = factorial(n) * ipow(h, n);
  BigInt lin = BigInt(n) * ipow(h, n);
  return {hinv, fac, lin, hinv <= fac, hinv <= lin};
}

}  // namespace condbound

#endif  // CONDBOUND_HEIGHTS_HPP
