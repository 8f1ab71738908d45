#ifndef CONDBOUND_QR_HPP
#define CONDBOUND_QR_HPP

// Unshifted QR iteration on symmetric positive definite integer matrices,
// carried out with Householder reflections in MPFR.

#include <vector>

#include "condbound/bounds.hpp"
#include "condbound/condition.hpp"
#include "condbound/numcore.hpp"

namespace condbound {

using RealMatrix = std::vector<std::vector<ExtReal>>;

struct QRTrace {
  unsigned long iterations = 0;
  std::vector<ExtReal> offdiag_norms;  // max |off-diagonal|, one per iterate
  std::vector<double> rate_estimates;  // offdiag_norms[k+1] / offdiag_norms[k]
  ExtReal threshold;                   // δ1 ‖A‖_F
  bool converged = false;
  ExtReal max_symmetry_drift;
  RealMatrix final_matrix;
  std::vector<RealMatrix> snapshots;  // every `snapshot_every` iterations, if requested

  double asymptotic_rate() const { return rate_estimates.empty() ? 0.0 : rate_estimates.back(); }
};

/// Exact test via leading principal minors.
inline bool is_positive_definite(const IntMatrix& a) {
  if (!a.square() || !a.symmetric()) return false;
  for (std::size_t k = 1; k <= a.rows(); ++k) {
    IntMatrix m(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m(i, j) = a(i, j);
    if (determinant(m) <= 0) return false;
  }
  return true;
}

namespace detail {

inline ExtReal max_offdiag(const RealMatrix& a) {
  ExtReal m(a[0][0].precision());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (i != j) m = max(m, abs(a[i][j]));
  return m;
}

inline ExtReal symmetry_drift(const RealMatrix& a) {
  ExtReal m(a[0][0].precision());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) m = max(m, abs(a[i][j] - a[j][i]));
  return m;
}

/// One step A <- RQ = Qᵀ A Q with A = QR by Householder reflections.
inline RealMatrix qr_step(const RealMatrix& a, long prec) {
  const std::size_t n = a.size();
  RealMatrix r = a;
  std::vector<std::vector<ExtReal>> vs;
  std::vector<std::size_t> starts;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    ExtReal tail(prec);
    for (std::size_t i = k + 1; i < n; ++i) tail += r[i][k] * r[i][k];
    if (tail.is_zero()) continue;
    ExtReal norm = sqrt(r[k][k] * r[k][k] + tail);
    std::vector<ExtReal> v(n - k, ExtReal(prec));
    for (std::size_t i = k; i < n; ++i) v[i - k] = r[i][k];
    v[0] = r[k][k].sign() >= 0 ? v[0] + norm : v[0] - norm;
    ExtReal vv(prec);
    for (const auto& x : v) vv += x * x;
    // H = I - 2 v vᵀ / vᵀv, applied from the left.
    for (std::size_t j = 0; j < n; ++j) {
      ExtReal s(prec);
      for (std::size_t i = k; i < n; ++i) s += v[i - k] * r[i][j];
      s = mul_si(s, 2) / vv;
      for (std::size_t i = k; i < n; ++i) r[i][j] -= s * v[i - k];
    }
    for (auto& x : v) x = x / sqrt(vv);
    vs.push_back(std::move(v));
    starts.push_back(k);
  }
  // R Q = R H_1 H_2 ... H_{n-1}
  for (std::size_t h = 0; h < vs.size(); ++h) {
    const auto& v = vs[h];
    const std::size_t k = starts[h];
    for (std::size_t i = 0; i < n; ++i) {
      ExtReal s(prec);
      for (std::size_t j = k; j < n; ++j) s += r[i][j] * v[j - k];
      s = mul_si(s, 2);
      for (std::size_t j = k; j < n; ++j) r[i][j] -= s * v[j - k];
    }
  }
  return r;
}

}  // namespace detail

/// Repeats A <- RQ until max |off-diagonal| <= δ1 ‖A‖_F (initial A) or
/// max_iter steps.
inline QRTrace qr_iterate(const IntMatrix& a, const BigRational& delta1, unsigned long max_iter,
                          long prec = kDefaultPrecision, unsigned long snapshot_every = 0) {
  if (!a.square()) throw DimensionError("qr_iterate: matrix is not square");
  if (!a.symmetric()) throw DomainError("qr_iterate: matrix is not symmetric");
  if (!is_positive_definite(a)) throw DomainError("qr_iterate: matrix is not positive definite");
  if (delta1 <= 0 || delta1 >= 1) throw DomainError("qr_iterate: delta1 must lie in (0, 1)");
  const std::size_t n = a.rows();
  RealMatrix m(n, std::vector<ExtReal>(n, ExtReal(prec)));
  BigInt fro = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = ExtReal::from_int(a(i, j), prec);
      fro += a(i, j) * a(i, j);
    }
  QRTrace t;
  t.threshold = mul(ExtReal::from_rational(delta1, prec), sqrt(ExtReal::from_int(fro, prec)));
  t.max_symmetry_drift = ExtReal(prec);
  t.offdiag_norms.push_back(detail::max_offdiag(m));
  if (snapshot_every) t.snapshots.push_back(m);
  while (t.offdiag_norms.back() > t.threshold && t.iterations < max_iter) {
    m = detail::qr_step(m, prec);
    ++t.iterations;
    t.max_symmetry_drift = max(t.max_symmetry_drift, detail::symmetry_drift(m));
    ExtReal off = detail::max_offdiag(m);
    const ExtReal& prev = t.offdiag_norms.back();
    t.rate_estimates.push_back(prev.is_zero() ? 0.0 : (off / prev).to_double());
    t.offdiag_norms.push_back(off);
    if (snapshot_every && t.iterations % snapshot_every == 0) t.snapshots.push_back(m);
  }
  t.converged = t.offdiag_norms.back() <= t.threshold;
  t.final_matrix = std::move(m);
  return t;
}

struct QRPrediction {
  BigInt iterations;
  bool infinite_gap = false;
  std::optional<BigRational> delta0;  // when exact
};

namespace detail {

/// ⌈log2(1/δ1) / δ0⌉ rounded up throughout, with δ0 given as an upper
/// bound on 1/δ0.
inline BigInt qr_budget(const ExtReal& inv_delta0_up, const BigRational& delta1, long prec) {
  if (delta1 <= 0 || delta1 >= 1) throw DomainError("predict_qr_iterations: delta1 must lie in (0, 1)");
  ExtReal l = log2(ExtReal::from_rational(BigRational(1) / delta1, prec, Rounding::up), Rounding::up);
  return mul(l, inv_delta0_up, Rounding::up).ceil_int();
}

}  // namespace detail

/// ⌈(1/δ0) log2(1/δ1)⌉ with δ0 = relgap(A).
inline QRPrediction predict_qr_iterations(const IntMatrix& a, const BigRational& delta1,
                                          long prec = kDefaultPrecision) {
  if (!is_positive_definite(a)) throw DomainError("predict_qr_iterations: matrix is not positive definite");
  ConditionValue gap = relgap_matrix(a, prec);
  QRPrediction p;
  if (gap.infinite) {
    p.infinite_gap = true;
    p.iterations = 0;
    return p;
  }
  ExtReal inv;
  if (gap.exact) {
    p.delta0 = gap.exact;
    inv = ExtReal::from_rational(BigRational(1) / *gap.exact, prec, Rounding::up);
  } else {
    inv = div(ExtReal(1, prec), gap.value.lo, Rounding::up);
  }
  p.iterations = detail::qr_budget(inv, delta1, prec);
  return p;
}

/// Same with δ0 replaced by the a-priori relgap lower bound.
inline QRPrediction predict_qr_iterations_apriori(unsigned long n, const BigInt& h, const BigRational& delta1,
                                                  long prec = kDefaultPrecision) {
  QRPrediction p;
  p.delta0 = thm6_rational(n, h);
  BigRational inv = BigRational(1) / *p.delta0;
  long bits = static_cast<long>(bit_length(inv.get_num())) + prec;
  p.iterations = detail::qr_budget(ExtReal::from_rational(inv, bits, Rounding::up), delta1, bits);
  return p;
}

/// (1 + δ0)^k > 1 + k δ0 >= 2, exactly. Equality in the first step is
/// allowed at k = 1, where both sides coincide.
inline bool check_ratio_growth(const BigRational& delta0, unsigned long k) {
  if (delta0 <= 0) throw DomainError("check_ratio_growth: delta0 must be positive");
  BigRational inv = BigRational(1) / delta0;
  BigInt need;
  mpz_cdiv_q(need.get_mpz_t(), inv.get_num_mpz_t(), inv.get_den_mpz_t());
  if (BigInt(k) < need) throw DomainError("check_ratio_growth: k below ceil(1/delta0)");
  BigRational lhs = rpow(BigRational(1) + delta0, k);
  BigRational mid = BigRational(1) + BigRational(k) * delta0;
  bool first = k == 1 ? lhs >= mid : lhs > mid;
  return first && mid >= 2;
}

}  // namespace condbound

#endif  // CONDBOUND_QR_HPP
