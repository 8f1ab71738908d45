#include <gtest/gtest.h>

#include <random>

#include "condbound/numcore.hpp"

using namespace condbound;

namespace {

BigInt cofactor_det(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  BigInt s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix m(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k)
        if (k != j) m(i - 1, c++) = a(i, k);
    BigInt t = a(0, j) * cofactor_det(m);
    s += (j % 2 == 0) ? t : BigInt(-t);
  }
  return s;
}

IntMatrix shifted(const IntMatrix& a, long t) {
  IntMatrix b = a;
  for (std::size_t i = 0; i < a.rows(); ++i) b(i, i) -= t;
  return b;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  IntMatrix a(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a(i, j) = dist(rng);
  return a;
}

double to_d(const ExtReal& x) { return x.to_double(); }

}  // namespace

TEST(CharPoly, Examples) {
  EXPECT_EQ(char_poly(IntMatrix{{1, 0}, {0, 1}}), (IntPolynomial{1, -2, 1}));
  EXPECT_EQ(char_poly(IntMatrix{{0, 1}, {1, 0}}), (IntPolynomial{-1, 0, 1}));
  EXPECT_EQ(char_poly(IntMatrix{{2}}), (IntPolynomial{2, -1}));
  EXPECT_THROW(char_poly(IntMatrix(2, 3, BigInt(0))), DimensionError);
}

TEST(CharPoly, MatchesCofactorExhaustive2x2) {
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b)
      for (long c = -2; c <= 2; ++c)
        for (long d = -2; d <= 2; ++d) {
          IntMatrix m{{a, b}, {c, d}};
          IntPolynomial p = char_poly(m);
          for (long t = -3; t <= 3; ++t) ASSERT_EQ(p.eval(BigInt(t)), cofactor_det(shifted(m, t))) << to_string(m);
        }
}

TEST(CharPoly, MatchesCofactorSampled) {
  std::mt19937_64 rng(7);
  for (std::size_t n : {3u, 4u, 5u}) {
    for (int rep = 0; rep < 300; ++rep) {
      IntMatrix m = random_matrix(rng, n, n, -2, 2);
      IntPolynomial p = char_poly(m);
      ASSERT_EQ(p.degree(), static_cast<int>(n));
      ASSERT_EQ(abs(p.leading()), 1);
      for (long t = -3; t <= 3; ++t) ASSERT_EQ(p.eval(BigInt(t)), cofactor_det(shifted(m, t))) << to_string(m);
    }
  }
}

TEST(CharPoly, CoefficientBoundExhaustive2x2) {
  // max |p_i| <= (2 sqrt(n) H)^n, squared to stay in the integers.
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b)
      for (long c = -2; c <= 2; ++c)
        for (long d = -2; d <= 2; ++d) {
          IntMatrix m{{a, b}, {c, d}};
          BigInt h = max_abs_entry(m);
          if (h == 0) continue;
          BigInt rhs = ipow(BigInt(8) * h * h, 2);
          BigInt lhs = char_poly(m).max_abs_coeff();
          ASSERT_LE(lhs * lhs, rhs) << to_string(m);
        }
}

TEST(Determinant, BareissMatchesCofactor) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 500; ++rep) {
    std::size_t n = 1 + rep % 5;
    IntMatrix m = random_matrix(rng, n, n, -3, 3);
    ASSERT_EQ(determinant(m), cofactor_det(m));
  }
}

TEST(PolyRoots, Examples) {
  auto r = poly_roots(IntPolynomial{-1, 0, 1});
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(to_d(r[0].value.re), 1.0);
  EXPECT_EQ(to_d(r[1].value.re), -1.0);
  EXPECT_TRUE(r[0].exact());

  r = poly_roots(IntPolynomial{2, -3, 1});
  EXPECT_EQ(to_d(r[0].value.re), 2.0);
  EXPECT_EQ(to_d(r[1].value.re), 1.0);
  EXPECT_TRUE(r[0].value.is_real());

  r = poly_roots(IntPolynomial{1, 0, 1});
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(to_d(r[0].value.re), 0.0, 1e-60);
  EXPECT_NEAR(std::abs(to_d(r[0].value.im)), 1.0, 1e-60);
  EXPECT_NEAR(to_d(r[0].value.im) + to_d(r[1].value.im), 0.0, 1e-60);

  EXPECT_THROW(poly_roots(IntPolynomial()), DomainError);
}

TEST(PolyRoots, MultipleRootsRepeated) {
  auto r = poly_roots(IntPolynomial::from_roots({BigInt(2), BigInt(2), BigInt(-1)}));
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].multiplicity, 2u);
  EXPECT_EQ(to_d(r[0].value.re), 2.0);
  EXPECT_EQ(to_d(r[1].value.re), 2.0);
  EXPECT_EQ(to_d(r[2].value.re), -1.0);

  r = poly_roots(IntPolynomial{0, 0, 1});
  ASSERT_EQ(r.size(), 2u);
  EXPECT_TRUE(r[0].value.is_zero());
}

TEST(PolyRoots, RadiusWithinHalfPrecision) {
  auto r = poly_roots(IntPolynomial{-2, 0, 1}, 256);
  ExtReal lim = ExtReal::pow2(-128, 256);
  for (const auto& z : r) EXPECT_LE(z.radius, lim);
  EXPECT_NEAR(to_d(r[0].value.re), std::sqrt(2.0), 1e-15);
}

TEST(PolyRoots, VietaExhaustive) {
  // sum = -f_{d-1}/f_d and product = (-1)^d f_0/f_d within twice the radii.
  const long prec = 256;
  for (int d = 1; d <= 3; ++d) {
    std::vector<long> c(d + 1, -2);
    while (true) {
      if (c[d] != 0) {
        std::vector<BigInt> cc(c.begin(), c.end());
        IntPolynomial f(cc);
        auto roots = poly_roots(f, prec);
        ASSERT_EQ(roots.size(), static_cast<std::size_t>(d));
        ExtComplex s(prec), p(ExtReal(1, prec), ExtReal(prec));
        ExtReal rad(prec), pmod(1, prec), prad(prec);
        for (const auto& z : roots) {
          s += z.value;
          rad += z.radius;
          // |prod (z_i + e_i) - prod z_i| <= prod(|z_i| + r_i) - prod |z_i|
          prad = add(mul(prad, add(abs(z.value), z.radius)), mul(pmod, z.radius));
          pmod = mul(pmod, abs(z.value));
          p = p * z.value;
        }
        BigRational es(BigInt(-f[d - 1]), f[d]);
        BigRational ep(d % 2 ? BigInt(-f[0]) : f[0], f[d]);
        es.canonicalize();
        ep.canonicalize();
        ExtReal tol = add(mul_si(rad, 2), ExtReal::pow2(-200, prec));
        ExtReal ptol = add(mul_si(prad, 2), ExtReal::pow2(-200, prec));
        ExtComplex ds = s - ExtComplex::real(ExtReal::from_rational(es, prec));
        ExtComplex dp = p - ExtComplex::real(ExtReal::from_rational(ep, prec));
        ASSERT_LE(abs(ds), tol) << f.str();
        ASSERT_LE(abs(dp), ptol) << f.str();
      }
      int i = 0;
      while (i <= d && c[i] == 2) c[i++] = -2;
      if (i > d) break;
      ++c[i];
    }
  }
}

TEST(PolyRoots, WideCoefficients) {
  // (x - 2^70)(x - 3) has coefficients beyond double mantissas.
  BigInt big = ipow(BigInt(2), 70);
  auto r = poly_roots(IntPolynomial::from_roots({big, BigInt(3)}));
  EXPECT_EQ(r[0].value.re.to_rational(), BigRational(big));
  EXPECT_EQ(to_d(r[1].value.re), 3.0);
}

TEST(SymEigenvalues, Examples) {
  auto e = sym_eigenvalues(IntMatrix{{1, 0}, {0, 2}});
  EXPECT_EQ(to_d(e[0].value.re), 2.0);
  EXPECT_EQ(to_d(e[1].value.re), 1.0);
  e = sym_eigenvalues(IntMatrix{{0, 1}, {1, 0}});
  EXPECT_EQ(to_d(e[0].value.re), 1.0);
  EXPECT_EQ(to_d(e[1].value.re), -1.0);
  e = sym_eigenvalues(IntMatrix{{2, 1}, {1, 2}});
  EXPECT_EQ(to_d(e[0].value.re), 3.0);
  EXPECT_EQ(to_d(e[1].value.re), 1.0);
  for (const auto& v : e) EXPECT_TRUE(v.value.im.is_zero());
  EXPECT_THROW(sym_eigenvalues(IntMatrix{{1, 2}, {0, 1}}), DomainError);
}

TEST(SymEigenvalues, RationalRotationInvariance) {
  // Q = [[3,-4],[4,3]]/5; 25 Q A Qᵀ is integral with eigenvalues 25 λ.
  IntMatrix q{{3, -4}, {4, 3}};
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 200; ++rep) {
    IntMatrix a = random_matrix(rng, 2, 2, -5, 5);
    a(1, 0) = a(0, 1);
    IntMatrix b = q * a * q.transpose();
    auto ea = sym_eigenvalues(a);
    auto eb = sym_eigenvalues(b);
    for (std::size_t i = 0; i < 2; ++i) {
      ExtReal scaled = mul_si(ea[i].value.re, 25);
      ExtReal tol = add(mul_si(ea[i].radius, 25), eb[i].radius, Rounding::up);
      ASSERT_LE(abs(sub(scaled, eb[i].value.re)), add(tol, ExtReal::pow2(-240, 256))) << to_string(a);
    }
  }
}

TEST(SingularValues, Examples) {
  auto s = singular_values(IntMatrix{{1, 0}, {0, 1}});
  EXPECT_EQ(to_d(s[0].value.re), 1.0);
  EXPECT_EQ(to_d(s[1].value.re), 1.0);
  s = singular_values(IntMatrix{{1, 1}, {0, 1}});
  EXPECT_NEAR(to_d(s[0].value.re), 1.6180339887498949, 1e-15);
  EXPECT_NEAR(to_d(s[1].value.re), 0.6180339887498949, 1e-15);
  s = singular_values(IntMatrix{{3, 0}, {0, 0}});
  EXPECT_EQ(to_d(s[0].value.re), 3.0);
  EXPECT_TRUE(s[1].value.is_zero());
  EXPECT_TRUE(s[1].exact());
}

TEST(NullVector, Examples) {
  const double h = std::sqrt(0.5);
  auto v = null_vector(IntMatrix{{1, 1}, {0, 2}}, ExtComplex::real(ExtReal(2, 256)));
  EXPECT_NEAR(to_d(v[0].re), h, 1e-15);
  EXPECT_NEAR(to_d(v[1].re), h, 1e-15);
  v = null_vector(IntMatrix{{5, 0}, {0, 7}}, ExtComplex::real(ExtReal(5, 256)));
  EXPECT_EQ(to_d(v[0].re), 1.0);
  EXPECT_EQ(to_d(v[1].re), 0.0);
  v = null_vector(IntMatrix{{0, 1}, {1, 0}}, ExtComplex::real(ExtReal(1, 256)));
  EXPECT_NEAR(to_d(v[0].re), h, 1e-15);
  EXPECT_NEAR(to_d(v[1].re), h, 1e-15);
  EXPECT_THROW(null_vector(IntMatrix{{5, 0}, {0, 7}}, ExtComplex::real(ExtReal(6, 256))), DomainError);
}

TEST(NullVector, SignConventionComplex) {
  // Rotation by 90 degrees: eigenvalue i, eigenvector (1, i)/sqrt2.
  auto v = null_vector(IntMatrix{{0, 1}, {-1, 0}}, ExtComplex(ExtReal(256), ExtReal(1, 256)));
  EXPECT_NEAR(to_d(v[0].re), std::sqrt(0.5), 1e-15);
  EXPECT_TRUE(v[0].im.is_zero());
  EXPECT_NEAR(to_d(v[1].im), std::sqrt(0.5), 1e-15);
}

TEST(ExactSolve, Examples) {
  auto x = exact_solve(IntMatrix{{1, 0}, {0, 1}}, IntVector{3, 4});
  EXPECT_EQ(x, (RatVector{3, 4}));
  x = exact_solve(IntMatrix{{1, 1}, {0, 1}}, IntVector{2, 1});
  EXPECT_EQ(x, (RatVector{1, 1}));
  x = exact_solve(IntMatrix{{2, 0}, {0, 2}}, IntVector{1, 1});
  EXPECT_EQ(x, (RatVector{BigRational(1, 2), BigRational(1, 2)}));
  EXPECT_THROW(exact_solve(IntMatrix{{1, 2}, {2, 4}}, IntVector{1, 1}), DegenerateInstance);
  EXPECT_THROW(exact_solve(IntMatrix{{1, 2}, {2, 4}}, IntVector{1}), DimensionError);
}

TEST(ExactSolve, BackSubstitutionIsExact) {
  std::mt19937_64 rng(5);
  int solved = 0;
  for (int rep = 0; rep < 400; ++rep) {
    std::size_t n = 1 + rep % 4;
    IntMatrix a = random_matrix(rng, n, n, -3, 3);
    IntMatrix bm = random_matrix(rng, n, 1, -3, 3);
    if (determinant(a) == 0) {
      EXPECT_THROW(exact_solve(a, bm.entries()), DegenerateInstance);
      continue;
    }
    RatVector x = exact_solve(a, bm.entries());
    RatVector ax = to_rational(a) * x;
    for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(ax[i] - BigRational(bm(i, 0)), 0);
    ++solved;
  }
  EXPECT_GT(solved, 200);
}

TEST(ExactInverse, TimesMatrixIsIdentity) {
  IntMatrix a{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  RatMatrix inv = exact_inverse(a);
  EXPECT_EQ(to_rational(a) * inv, RatMatrix::identity(3));
}

TEST(Squarefree, Decomposition) {
  IntPolynomial f = IntPolynomial::from_roots({BigInt(1), BigInt(1), BigInt(1), BigInt(2), BigInt(2), BigInt(5)});
  auto sf = squarefree_decomposition(f);
  ASSERT_EQ(sf.size(), 3u);
  EXPECT_EQ(sf[0].factor, IntPolynomial::from_roots({BigInt(5)}));
  EXPECT_EQ(sf[1].multiplicity, 2u);
  EXPECT_EQ(sf[2].factor, IntPolynomial::from_roots({BigInt(1)}));
  EXPECT_FALSE(is_squarefree(f));
  EXPECT_TRUE(is_squarefree(IntPolynomial{-2, 0, 1}));
}

TEST(Polynomial, ParseAndPrint) {
  IntPolynomial f = IntPolynomial::parse("1,-3,2");
  EXPECT_EQ(f, (IntPolynomial{2, -3, 1}));
  EXPECT_EQ(f.str(), "1,-3,2");
  EXPECT_THROW(IntPolynomial::parse("1,,2"), DomainError);
  EXPECT_THROW(IntPolynomial::parse("1,x"), DomainError);
}

TEST(ExtRealConvert, ToRational) {
  EXPECT_EQ(ExtReal(256).to_rational(), BigRational(0));
  EXPECT_EQ(ExtReal(-3, 256).to_rational(), BigRational(-3));
  EXPECT_EQ(ExtReal::from_rational(BigRational(5, 8), 64).to_rational(), BigRational(5, 8));
  EXPECT_THROW(ExtReal::infinity(64).to_rational(), DomainError);
}
