#include <gtest/gtest.h>

#include <cmath>

#include "condbound/qr.hpp"

using namespace condbound;

namespace {

const BigRational kTol(1, 1 << 20);

// Characteristic polynomial coefficients of a real matrix (Faddeev-LeVerrier),
// det(tI - B) = t^n + c_{n-1} t^{n-1} + ... + c_0.
std::vector<ExtReal> real_char_poly(const RealMatrix& b) {
  const std::size_t n = b.size();
  const long prec = b[0][0].precision();
  std::vector<ExtReal> c(n + 1, ExtReal(prec));
  c[n] = ExtReal(1, prec);
  RealMatrix m(n, std::vector<ExtReal>(n, ExtReal(prec)));
  for (std::size_t k = 1; k <= n; ++k) {
    RealMatrix am(n, std::vector<ExtReal>(n, ExtReal(prec)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) am[i][j] += b[i][l] * m[l][j];
    // m_k = B m_{k-1} + c_{n-k+1} I with m_0 = 0; c_{n-k} = -tr(B m_k) / k
    for (std::size_t i = 0; i < n; ++i) am[i][i] += c[n - k + 1];
    ExtReal tr(prec);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += b[i][l] * am[l][i];
    c[n - k] = -div_si(tr, static_cast<long>(k));
    m = am;
  }
  return c;
}

RealMatrix to_real(const IntMatrix& a, long prec) {
  RealMatrix m(a.rows(), std::vector<ExtReal>(a.cols(), ExtReal(prec)));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = ExtReal::from_int(a(i, j), prec);
  return m;
}

}  // namespace

TEST(PositiveDefinite, Minors) {
  EXPECT_TRUE(is_positive_definite(IntMatrix{{2, 1}, {1, 2}}));
  EXPECT_FALSE(is_positive_definite(IntMatrix{{1, 2}, {2, 1}}));
  EXPECT_FALSE(is_positive_definite(IntMatrix{{1, 1}, {1, 1}}));
  EXPECT_FALSE(is_positive_definite(IntMatrix{{1, 1}, {0, 1}}));
}

TEST(QRIterate, Diagonal) {
  auto t = qr_iterate(IntMatrix{{3, 0}, {0, 1}}, kTol, 100);
  EXPECT_EQ(t.iterations, 0u);
  EXPECT_TRUE(t.converged);
  EXPECT_EQ(t.offdiag_norms.size(), 1u);
}

TEST(QRIterate, TwoByTwoRate) {
  auto t = qr_iterate(IntMatrix{{2, 1}, {1, 2}}, kTol, 200);
  EXPECT_TRUE(t.converged);
  EXPECT_EQ(t.offdiag_norms.size(), t.iterations + 1);
  EXPECT_NEAR(t.asymptotic_rate(), 1.0 / 3.0, 0.1 / 3.0);
  EXPECT_NEAR(t.final_matrix[0][0].to_double(), 3.0, 1e-5);
  EXPECT_NEAR(t.final_matrix[1][1].to_double(), 1.0, 1e-5);
}

TEST(QRIterate, RotatedDiagonal) {
  // 25 Q diag(4,1) Qᵀ with Q = [[3,-4],[4,3]]/5.
  IntMatrix a{{3 * 3 * 4 + 4 * 4 * 1, 3 * 4 * 4 - 4 * 3 * 1}, {3 * 4 * 4 - 4 * 3 * 1, 4 * 4 * 4 + 3 * 3 * 1}};
  auto t = qr_iterate(a, kTol, 200);
  EXPECT_TRUE(t.converged);
  EXPECT_NEAR(t.asymptotic_rate(), 0.25, 0.025);
}

TEST(QRIterate, Errors) {
  EXPECT_THROW(qr_iterate(IntMatrix{{1, 2}, {2, 1}}, kTol, 10), DomainError);
  EXPECT_THROW(qr_iterate(IntMatrix{{1, 1}, {0, 1}}, kTol, 10), DomainError);
  EXPECT_THROW(qr_iterate(IntMatrix{{2, 1}, {1, 2}}, BigRational(2), 10), DomainError);
  auto t = qr_iterate(IntMatrix{{2, 1}, {1, 2}}, kTol, 3);
  EXPECT_FALSE(t.converged);
  EXPECT_EQ(t.iterations, 3u);
}

TEST(QRIterate, PreservesSpectrumAndSymmetry) {
  IntMatrix a{{4, 1, 2}, {1, 3, 0}, {2, 0, 5}};
  auto t = qr_iterate(a, BigRational(1, 1L << 40), 500, kDefaultPrecision, 10);
  EXPECT_TRUE(t.converged);
  auto ref = real_char_poly(to_real(a, kDefaultPrecision));
  // det(tI - A) = -char_poly(A) for n = 3.
  IntPolynomial exact = char_poly(a);
  for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_EQ(ref[i], ExtReal::from_int(-exact[i], kDefaultPrecision));
  for (const auto& snap : t.snapshots) {
    auto c = real_char_poly(snap);
    for (std::size_t i = 0; i < c.size(); ++i) EXPECT_LT(abs(c[i] - ref[i]).to_double(), 1e-60);
  }
  EXPECT_LT(t.max_symmetry_drift.to_double(), std::ldexp(1.0, -128));
}

TEST(QRIterate, RateBoundedByEigenvalueRatios) {
  for (const IntMatrix& a : {IntMatrix{{4, 1, 2}, {1, 3, 0}, {2, 0, 5}}, IntMatrix{{5, 2}, {2, 2}},
                             IntMatrix{{6, 1, 0}, {1, 4, 1}, {0, 1, 2}}}) {
    auto t = qr_iterate(a, BigRational(1, 1L << 40), 2000);
    ASSERT_TRUE(t.converged);
    auto lam = sym_eigenvalues(a);
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < lam.size(); ++i)
      worst = std::max(worst, lam[i + 1].value.re.to_double() / lam[i].value.re.to_double());
    EXPECT_LE(t.asymptotic_rate(), worst + 0.1) << to_string(a);
  }
}

TEST(PredictQR, Examples) {
  // eigenvalues 3, 1: δ0 = 2/3.
  auto p = predict_qr_iterations(IntMatrix{{2, 1}, {1, 2}}, BigRational(1, 1024));
  EXPECT_EQ(p.iterations, 15);
  ASSERT_TRUE(p.delta0.has_value());
  EXPECT_EQ(*p.delta0, BigRational(2, 3));
  // eigenvalues 2, 1: δ0 = 1/2, δ1 = 1/2.
  EXPECT_EQ(predict_qr_iterations(IntMatrix{{2, 0}, {0, 1}}, BigRational(1, 2)).iterations, 2);
  EXPECT_EQ(predict_qr_iterations_apriori(2, 1, BigRational(1, 1024)).iterations, BigInt(262144) * 10);
  auto eq = predict_qr_iterations(IntMatrix{{3, 0}, {0, 3}}, BigRational(1, 2));
  EXPECT_TRUE(eq.infinite_gap);
  EXPECT_EQ(eq.iterations, 0);
}

TEST(PredictQR, NeverBelowActualOnTwoByTwoFamily) {
  int checked = 0;
  for (long x = 1; x <= 4; ++x)
    for (long y = 1; y <= 4; ++y)
      for (long z = 1; z <= 4; ++z) {
        IntMatrix a{{x, y}, {y, z}};
        if (!is_positive_definite(a)) continue;
        for (BigRational d1 : {BigRational(1, 64), BigRational(1, 1024), BigRational(1, 1 << 20)}) {
          auto p = predict_qr_iterations(a, d1);
          auto t = qr_iterate(a, d1, 100000);
          ASSERT_TRUE(t.converged);
          EXPECT_LE(BigInt(t.iterations), p.iterations) << to_string(a);
        }
        ++checked;
      }
  EXPECT_GT(checked, 10);
}

TEST(RatioGrowth, Examples) {
  EXPECT_TRUE(check_ratio_growth(BigRational(1, 2), 2));
  EXPECT_TRUE(check_ratio_growth(BigRational(1), 1));
  EXPECT_TRUE(check_ratio_growth(BigRational(1, 4), 4));
  EXPECT_THROW(check_ratio_growth(BigRational(1, 4), 3), DomainError);
  EXPECT_THROW(check_ratio_growth(BigRational(0), 3), DomainError);
}

TEST(RatioGrowth, Grid) {
  for (long num = 1; num <= 5; ++num)
    for (long den = 1; den <= 12; ++den) {
      BigRational d(num, den);
      d.canonicalize();
      BigInt need;
      BigRational inv = BigRational(1) / d;
      mpz_cdiv_q(need.get_mpz_t(), inv.get_num_mpz_t(), inv.get_den_mpz_t());
      for (unsigned long k = need.get_ui(); k < need.get_ui() + 5; ++k) EXPECT_TRUE(check_ratio_growth(d, k));
    }
}
