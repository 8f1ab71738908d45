#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "condbound/condition.hpp"

using namespace condbound;

namespace {

// The enclosure must contain log2(expected) and the raw value must be close.
void expect_value(const ConditionValue& c, double expected, double tol = 1e-12) {
  ASSERT_FALSE(c.infinite);
  const double l = std::log2(expected);
  EXPECT_LE(c.log2_value.to_double(Rounding::down), l + 1e-15) << c.witness;
  EXPECT_GE(c.log2_upper.to_double(Rounding::up), l - 1e-15) << c.witness;
  EXPECT_LT(c.log2_upper.to_double() - c.log2_value.to_double(), 1e-30 + tol);
  EXPECT_NEAR(c.raw_value.to_double(), expected, tol * std::max(1.0, expected));
}

BigRational q(long n, long d) {
  BigRational r(n, d);
  r.canonicalize();
  return r;
}

HomPoly hp(std::size_t nvars, unsigned d, std::vector<Monomial> t) { return {nvars, d, std::move(t)}; }

}  // namespace

TEST(Kappa, Examples) {
  expect_value(kappa(IntMatrix{{1, 0}, {0, 1}}), 1.0);
  expect_value(kappa(IntMatrix{{2, 0}, {0, 1}}), 2.0);
  expect_value(kappa(IntMatrix{{1, 1}, {0, 1}}), (3.0 + std::sqrt(5.0)) / 2.0);
  expect_value(kappa(IntMatrix{{5}}), 1.0);
  auto s = kappa(IntMatrix{{1, 2}, {2, 4}});
  EXPECT_TRUE(s.infinite);
  EXPECT_THROW(kappa(IntMatrix(2, 3, BigInt(0))), DimensionError);
}

TEST(Kappa, ExactPowerOfTwo) {
  auto c = kappa(IntMatrix{{4, 0}, {0, 1}});
  EXPECT_EQ(c.log2_value.to_double(), 2.0);
  EXPECT_EQ(c.log2_upper.to_double(), 2.0);
}

TEST(Kappa, ScaleAndTransposeInvariant) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> dist(-4, 4);
  for (int it = 0; it < 60; ++it) {
    IntMatrix a(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) a(i, j) = dist(rng);
    if (determinant(a) == 0) continue;
    IntMatrix b = a;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) b(i, j) *= -3;
    auto ka = kappa(a), kb = kappa(b), kt = kappa(a.transpose());
    EXPECT_TRUE(ka.log2_interval().overlaps(kb.log2_interval()));
    EXPECT_TRUE(ka.log2_interval().overlaps(kt.log2_interval()));
    EXPECT_GE(ka.log2_upper.to_double(), 0.0);
  }
}

TEST(KappaFast, AgreesWithMpfrExhaustive2x2) {
  long fast = 0;
  for (int code = 0; code < 625; ++code) {
    int c = code;
    IntMatrix a(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j, c /= 5) a(i, j) = c % 5 - 2;
    if (determinant(a) == 0) continue;
    auto f = kappa_fast(a);
    if (!f) continue;
    ++fast;
    auto k = kappa(a);
    EXPECT_LE(f->log2.lo, k.log2_upper.to_double(Rounding::up)) << to_string(a);
    EXPECT_GE(f->log2.hi, k.log2_value.to_double(Rounding::down)) << to_string(a);
    EXPECT_LT(f->log2.hi - f->log2.lo, 1e-9) << to_string(a);
  }
  EXPECT_EQ(fast, 496);  // every nonsingular matrix in the box
}

TEST(KappaFast, AgreesWithMpfrSampled3x3) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> dist(-3, 3);
  long fast = 0;
  for (int it = 0; it < 400; ++it) {
    IntMatrix a(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) a(i, j) = dist(rng);
    if (determinant(a) == 0) continue;
    auto f = kappa_fast(a);
    if (!f) continue;
    ++fast;
    auto k = kappa(a);
    EXPECT_LE(f->log2.lo, k.log2_upper.to_double(Rounding::up)) << to_string(a);
    EXPECT_GE(f->log2.hi, k.log2_value.to_double(Rounding::down)) << to_string(a);
  }
  EXPECT_GT(fast, 300);
}

TEST(KappaFast, RepeatedEigenvalues) {
  // Orthogonal-like matrices: AᵀA = 2I, triple root handled exactly.
  auto f = kappa_fast(IntMatrix{{1, 1, 0}, {1, -1, 0}, {0, 0, 1}});
  ASSERT_TRUE(f.has_value());
  EXPECT_LE(f->log2.lo, 0.5);
  EXPECT_GE(f->log2.hi, 0.5);
  auto g = kappa_fast(IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  ASSERT_TRUE(g.has_value());
  EXPECT_EQ(g->log2.lo, 0.0);
  EXPECT_EQ(g->log2.hi, 0.0);
}

TEST(CondLS, Example) {
  // A = e1, b = (1,1): sin^2 = cos^2 = 1/2, κ = 1, so 2√2 + 1.
  IntMatrix a{{1}, {0}};
  auto geo = least_squares_geometry(a, {1, 1});
  EXPECT_EQ(geo.sin_theta_sq, q(1, 2));
  EXPECT_EQ(geo.tan_theta_sq, 1);
  EXPECT_EQ(geo.x[0], 1);
  expect_value(cond_ls(a, {1, 1}), 2.0 * std::sqrt(2.0) + 1.0);
  auto f = cond_ls_fast(a, geo);
  ASSERT_TRUE(f.has_value());
  EXPECT_LE(f->log2.lo, std::log2(2.0 * std::sqrt(2.0) + 1.0));
  EXPECT_GE(f->log2.hi, std::log2(2.0 * std::sqrt(2.0) + 1.0));
}

TEST(CondLS, ConsistentSystem) {
  // b in the image: θ = 0, cond = 2κ.
  IntMatrix a{{1, 0}, {0, 2}, {0, 0}};
  expect_value(cond_ls(a, {3, 4, 0}), 4.0);
}

TEST(CondLS, Degenerate) {
  EXPECT_THROW(cond_ls(IntMatrix{{1}, {0}}, {0, 1}), DegenerateInstance);
  EXPECT_THROW(cond_ls(IntMatrix{{1, 2}, {2, 4}}, {1, 1}), DegenerateInstance);
  EXPECT_THROW(cond_ls(IntMatrix{{1}, {0}}, {1}), DimensionError);
  EXPECT_THROW(cond_ls(IntMatrix{{1, 0}}, {1}), DomainError);
}

TEST(CondLS, FastAgreesSampled) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> dist(-3, 3);
  int compared = 0;
  for (int it = 0; it < 300; ++it) {
    IntMatrix a(3, 2);
    IntVector b(3);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 2; ++j) a(i, j) = dist(rng);
      b[i] = dist(rng);
    }
    LeastSquaresGeometry geo;
    try {
      geo = least_squares_geometry(a, b);
    } catch (const DegenerateInstance&) {
      continue;
    }
    auto f = cond_ls_fast(a, geo);
    if (!f) continue;
    auto c = cond_ls(a, b);
    EXPECT_LE(f->log2.lo, c.log2_upper.to_double(Rounding::up));
    EXPECT_GE(f->log2.hi, c.log2_value.to_double(Rounding::down));
    ++compared;
  }
  EXPECT_GT(compared, 150);
}

TEST(CondNSE, Examples) {
  expect_value(cond_nse(IntMatrix{{1, 0}, {0, 2}}), 1.0);
  expect_value(cond_nse(IntMatrix{{2, 1}, {1, 2}}), 1.0);
  expect_value(cond_nse(IntMatrix{{1, 1}, {0, 2}}), std::sqrt(2.0));
  expect_value(cond_nse(IntMatrix{{0, -1}, {1, 0}}), 1.0);
  expect_value(cond_nse(IntMatrix{{7}}), 1.0);
  EXPECT_THROW(cond_nse(IntMatrix{{1, 1}, {0, 1}}), DegenerateInstance);
}

TEST(CondNSE, SelectedEigenvalue) {
  // [[1,a],[0,2]]: both eigenvalues have condition sqrt(1 + a^2).
  IntMatrix a{{1, 3}, {0, 2}};
  expect_value(cond_nse(a, EigenSelector::at(0)), std::sqrt(10.0));
  expect_value(cond_nse(a, EigenSelector::at(1)), std::sqrt(10.0));
  EXPECT_THROW(cond_nse(a, EigenSelector::at(2)), DomainError);
}

TEST(CondNSE, AdjugateIdentity) {
  // adj(tI - A)(tI - A) = det(tI - A) I at several integer t.
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> dist(-3, 3);
  for (int it = 0; it < 30; ++it) {
    IntMatrix a(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) a(i, j) = dist(rng);
    auto adj = adjugate_polynomial(a);
    IntPolynomial p = char_poly(a);
    for (long t = -2; t <= 2; ++t) {
      IntMatrix adjt(3, 3), m(3, 3);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
          adjt(i, j) = adj(i, j).eval(BigInt(t));
          m(i, j) = (i == j ? BigInt(t) : BigInt(0)) - a(i, j);
        }
      IntMatrix prod = adjt * m;
      BigInt d = -p.eval(BigInt(t));  // det(tI - A) = -det(A - tI) for n = 3
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(prod(i, j), i == j ? d : BigInt(0));
    }
  }
}

TEST(CondNSE, AtLeastOneAndNormalIsOne) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> dist(-3, 3);
  for (int it = 0; it < 40; ++it) {
    IntMatrix a(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) a(i, j) = dist(rng);
    if (!is_squarefree(char_poly(a))) continue;
    auto c = cond_nse(a);
    EXPECT_GE(c.log2_upper.to_double(Rounding::up), 0.0) << to_string(a);
    IntMatrix s = a;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < i; ++j) s(i, j) = s(j, i);
    if (!is_squarefree(char_poly(s))) continue;
    auto cs = cond_nse(s);
    EXPECT_LE(cs.log2_value.to_double(Rounding::down), 1e-15);
    EXPECT_GE(cs.log2_upper.to_double(Rounding::up), -1e-30);
  }
}

TEST(MuUnivariate, Examples) {
  expect_value(mu_univariate(IntPolynomial{1, 1}), std::sqrt(2.0));
  expect_value(mu_univariate(IntPolynomial{-2, 0, 1}), std::sqrt(7.0) / (2.0 * std::sqrt(2.0)));
  expect_value(mu_univariate(IntPolynomial{0, 1}), 1.0);
  // x^2 + 1: roots ±i, sqrt(1+1+1) / 2.
  expect_value(mu_univariate(IntPolynomial{1, 0, 1}), std::sqrt(3.0) / 2.0);
  EXPECT_THROW(mu_univariate(IntPolynomial{1, -2, 1}), DegenerateInstance);
  EXPECT_THROW(mu_univariate(IntPolynomial{3}), DomainError);
}

TEST(MuSystem, Linear) {
  HomogeneousSystem f{1, {hp(2, 1, {{-1, {1, 0}}, {1, {0, 1}}})}};
  std::vector<ExtComplex> z{ExtComplex::real(ExtReal(1, 256)), ExtComplex::real(ExtReal(1, 256))};
  expect_value(mu_system(f, z), 1.0, 1e-15);
}

TEST(MuSystem, Quadratic) {
  HomogeneousSystem f{1, {hp(2, 2, {{1, {2, 0}}, {-1, {0, 2}}})}};
  std::vector<ExtComplex> z{ExtComplex::real(ExtReal(1, 256)), ExtComplex::real(ExtReal(1, 256))};
  expect_value(mu_system(f, z), 1.0 / std::sqrt(2.0), 1e-15);
  std::vector<ExtComplex> bad{ExtComplex::real(ExtReal(1, 256)), ExtComplex::real(ExtReal(2, 256))};
  EXPECT_THROW(mu_system(f, bad), DomainError);
}

TEST(MuSystem, MatchesUnivariateDehomogenized) {
  // x0^2 - 2 x1^2... root (√2, 1): compare two scalings of the same root.
  HomogeneousSystem f{1, {hp(2, 2, {{1, {2, 0}}, {-2, {0, 2}}})}};
  ExtReal r2 = sqrt(ExtReal(2, 256));
  std::vector<ExtComplex> z1{ExtComplex::real(r2), ExtComplex::real(ExtReal(1, 256))};
  std::vector<ExtComplex> z2{ExtComplex::real(mul_si(r2, 3)), ExtComplex::real(ExtReal(3, 256))};
  auto a = mu_system(f, z1), b = mu_system(f, z2);
  EXPECT_NEAR(a.raw_value.to_double(), b.raw_value.to_double(), 1e-12);
}

TEST(MuSystem, TwoEquations) {
  // F1 = x1 - x0, F2 = x2 - x0 at (1,1,1): μ = ‖F‖ ‖(DF|T)^{-1}‖.
  HomogeneousSystem f{2, {hp(3, 1, {{-1, {1, 0, 0}}, {1, {0, 1, 0}}}), hp(3, 1, {{-1, {1, 0, 0}}, {1, {0, 0, 1}}})}};
  std::vector<ExtComplex> z(3, ExtComplex::real(ExtReal(1, 256)));
  // DF restricted to ζ^⊥ has singular values √3 and 1, so ‖inverse‖ = 1 and ‖F‖ = 2.
  expect_value(mu_system(f, z), 2.0, 1e-15);
}

TEST(Relgap, Matrix) {
  auto a = relgap_matrix(IntMatrix{{1, 0}, {0, 2}});
  ASSERT_TRUE(a.exact.has_value());
  EXPECT_EQ(*a.exact, q(1, 2));
  EXPECT_EQ(*relgap_matrix(IntMatrix{{1, 0}, {0, -1}}).exact, 2);
  EXPECT_EQ(*relgap_matrix(IntMatrix{{2, 1}, {1, 2}}).exact, q(2, 3));
  EXPECT_TRUE(relgap_matrix(IntMatrix{{3, 0}, {0, 3}}).infinite);
  expect_value(relgap_matrix(IntMatrix{{1, 1}, {1, 0}}), std::sqrt(5.0) / ((1.0 + std::sqrt(5.0)) / 2.0));
  EXPECT_THROW(relgap_matrix(IntMatrix{{1, 1}, {0, 1}}), DomainError);
}

TEST(Relgap, Polynomial) {
  EXPECT_EQ(*relgap_poly(IntPolynomial{2, -3, 1}).exact, 1);
  EXPECT_TRUE(relgap_poly(IntPolynomial{-1, 0, 1}).infinite);
  // (x-1)(x-3)(x+3): moduli 3, 3, 1.
  EXPECT_EQ(*relgap_poly(IntPolynomial::from_roots({1, 3, -3})).exact, 2);
  // x^2 - 2 x: the zero root is ignored.
  EXPECT_TRUE(relgap_poly(IntPolynomial{0, -2, 1}).infinite);
  // x^2 - 3 (moduli equal) times x - 1.
  expect_value(relgap_poly(IntPolynomial{-3, 0, 1} * IntPolynomial{-1, 1}), std::sqrt(3.0) - 1.0);
}
