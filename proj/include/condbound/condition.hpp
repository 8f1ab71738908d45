#ifndef CONDBOUND_CONDITION_HPP
#define CONDBOUND_CONDITION_HPP

// Condition numbers of concrete integer instances. Each value carries an
// enclosure [log2_value, log2_upper] with log2_value rounded down, so it can
// be compared soundly against round-up bounds.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "condbound/detail/small_spectrum.hpp"
#include "condbound/heights.hpp"
#include "condbound/numcore.hpp"

namespace condbound {

struct ConditionValue {
  ExtReal log2_value;  // round-down
  ExtReal log2_upper;  // round-up
  ExtReal raw_value;   // nearest, informational
  Interval value;
  std::string witness;
  bool infinite = false;
  std::optional<BigRational> exact;

  Interval log2_interval() const { return {log2_value, log2_upper}; }
};

inline ConditionValue make_condition(const Interval& v, std::string witness) {
  const long p = v.precision();
  ExtReal lo = v.lo.sign() <= 0 ? ExtReal::infinity(p, -1) : log2(v.lo, Rounding::down);
  ExtReal hi = v.hi.sign() <= 0 ? ExtReal::infinity(p, -1) : log2(v.hi, Rounding::up);
  return {lo, hi, v.mid(), v, std::move(witness), false, std::nullopt};
}

inline ConditionValue make_exact_condition(const BigRational& q, long prec, std::string witness) {
  ConditionValue c = make_condition(Interval::from_rational(q, prec), std::move(witness));
  c.exact = q;
  return c;
}

inline ConditionValue infinite_condition(std::string witness, long prec = kDefaultPrecision) {
  ExtReal inf = ExtReal::infinity(prec);
  return {inf, inf, inf, Interval{inf, inf}, std::move(witness), true, std::nullopt};
}

namespace detail {

/// Runs `attempt` at doubling precision until it yields a value.
template <typename F>
auto with_escalation(long prec, const char* what, F attempt) {
  const long ceiling = std::max(max_precision_bits(), prec);
  for (long p = prec; p <= ceiling; p *= 2) {
    if (auto v = attempt(p)) return *v;
  }
  throw PrecisionError(std::string(what) + ": enclosure not resolved", ceiling);
}

/// Σ |q_k| t^k rounded up, for t >= 0.
inline ExtReal majorant(const IntPolynomial& q, const ExtReal& t) {
  ExtReal s(kMinPrecision);
  for (std::size_t k = q.coeffs().size(); k-- > 0;)
    s = add(mul(s, t, Rounding::up), ExtReal::from_int(abs(q.coeffs()[k]), kMinPrecision, Rounding::up), Rounding::up);
  return s;
}

/// Enclosure of q(ζ) for every ζ in the disc of z: the value at the center
/// plus r Q'(|c| + r) plus a Horner rounding allowance.
struct DiscValue {
  ExtComplex value;
  ExtReal radius;

  Interval modulus() const {
    ExtReal lo = sub(abs(value, Rounding::down), radius, Rounding::down);
    if (lo.sign() < 0) lo = ExtReal(lo.precision());
    return {lo, add(abs(value, Rounding::up), radius, Rounding::up)};
  }
};

inline DiscValue eval_disc(const IntPolynomial& q, const CertifiedComplex& z, long prec) {
  if (q.is_zero()) return {ExtComplex(prec), ExtReal(prec)};
  const ExtComplex c(with_precision(z.value.re, prec), with_precision(z.value.im, prec));
  ExtComplex v(ExtReal::from_int(q.leading(), prec), ExtReal(prec));
  for (std::size_t k = q.coeffs().size() - 1; k-- > 0;) {
    v = v * c;
    v.re += ExtReal::from_int(q.coeffs()[k], prec);
  }
  const ExtReal absc = abs(c, Rounding::up);
  ExtReal rad = mul(mul_si(ExtReal::pow2(-prec, kMinPrecision), 4 * (q.degree() + 2), Rounding::up),
                    majorant(q, absc), Rounding::up);
  if (!z.radius.is_zero()) {
    ExtReal t = add(absc, z.radius, Rounding::up);
    rad = add(rad, mul(z.radius, majorant(q.derivative(), t), Rounding::up), Rounding::up);
  }
  return {v, rad};
}

/// κ(A)² = λ_max / λ_min of the Gram matrix, with the attaining eigenvalues.
struct GramRatio {
  Interval kappa_sq;
  CertifiedComplex lmax;
  CertifiedComplex lmin;
};

inline std::optional<GramRatio> gram_ratio(const IntMatrix& g, long prec) {
  ComplexList lam = real_rooted_roots(char_poly(g), prec);
  const auto& top = lam.front();
  const auto& bot = lam.back();
  Interval hi = top.real_interval();
  Interval lo = bot.real_interval();
  if (lo.lo.sign() <= 0) return std::nullopt;
  return GramRatio{hi / lo, top, bot};
}

}  // namespace detail

/// κ(A) = σ_max / σ_min. A singular matrix (exact determinant zero) gives the
/// infinite marker.
inline ConditionValue kappa(const IntMatrix& a, long prec = kDefaultPrecision) {
  if (!a.square()) throw DimensionError("kappa: matrix is not square");
  if (a.rows() == 0) throw DimensionError("kappa: empty matrix");
  if (determinant(a) == 0) return infinite_condition("singular: det(A)=0", prec);
  IntMatrix g = gram(a);
  return detail::with_escalation(prec, "kappa", [&](long p) -> std::optional<ConditionValue> {
    auto r = detail::gram_ratio(g, p);
    if (!r) return std::nullopt;
    Interval k = sqrt(r->kappa_sq);
    return make_condition(k, "sigma_max^2=" + r->lmax.value.re.str(12) + " sigma_min^2=" + r->lmin.value.re.str(12));
  });
}

/// Double-precision enclosure of log2 κ for n <= 3, from exact-sign
/// eigenvalue brackets of AᵀA. nullopt when the brackets cannot be confirmed.
struct FastEnclosure {
  detail::DInterval log2;
  double raw;
};

inline std::optional<detail::DInterval> kappa_sq_fast(const IntMatrix& g) {
  auto br = detail::spd_brackets(g);
  if (!br) return std::nullopt;
  const auto& top = (*br)[0];
  const auto& bot = (*br)[g.rows() - 1];
  if (!(bot.lo > 0.0)) return std::nullopt;
  detail::DInterval q{top.lo / bot.hi, top.hi / bot.lo};
  if (!(top.lo == top.hi && bot.lo == bot.hi && q.lo * bot.hi == top.lo)) {
    q.lo = detail::down(q.lo);
    q.hi = detail::up(q.hi);
  }
  return q;
}

/// Caller guarantees A is square and nonsingular.
inline std::optional<FastEnclosure> kappa_fast(const IntMatrix& a) {
  auto q = kappa_sq_fast(gram(a));
  if (!q) return std::nullopt;
  detail::DInterval l = detail::dlog2(*q);
  l.lo /= 2.0;
  l.hi /= 2.0;
  return FastEnclosure{l, std::sqrt((q->lo + q->hi) / 2.0)};
}

/// Exact least-squares geometry from the normal equations.
struct LeastSquaresGeometry {
  RatVector x;
  RatVector r;
  BigRational sin_theta_sq;
  BigRational cos_theta_sq;
  BigRational tan_theta_sq;
};

inline LeastSquaresGeometry least_squares_geometry(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw DimensionError("cond_ls: b length differs from rows(A)");
  if (a.rows() < a.cols()) throw DomainError("cond_ls: needs m >= n");
  IntMatrix g = gram(a);
  if (determinant(g) == 0) throw DegenerateInstance("cond_ls: A does not have full rank");
  IntVector atb = a.transpose() * b;
  bool zero = true;
  for (const auto& v : atb) zero = zero && v == 0;
  if (zero) throw DegenerateInstance("cond_ls: b is orthogonal to the image of A");
  LeastSquaresGeometry geo;
  geo.x = exact_solve(g, atb);
  geo.r = to_rational(a) * geo.x;
  BigRational rr = 0, bb = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    geo.r[i] -= BigRational(b[i]);
    rr += geo.r[i] * geo.r[i];
    bb += BigRational(b[i] * b[i]);
  }
  geo.sin_theta_sq = rr / bb;
  geo.cos_theta_sq = 1 - geo.sin_theta_sq;
  geo.tan_theta_sq = geo.sin_theta_sq / geo.cos_theta_sq;
  return geo;
}

/// cond_LS = 2 κ(A) / cos θ + tan θ κ(A)².
inline ConditionValue cond_ls(const IntMatrix& a, const IntVector& b, long prec = kDefaultPrecision) {
  LeastSquaresGeometry geo = least_squares_geometry(a, b);
  IntMatrix g = gram(a);
  return detail::with_escalation(prec, "cond_ls", [&](long p) -> std::optional<ConditionValue> {
    auto r = detail::gram_ratio(g, p);
    if (!r) return std::nullopt;
    Interval k = sqrt(r->kappa_sq);
    Interval c = sqrt(Interval::from_rational(geo.cos_theta_sq, p));
    Interval t = sqrt(Interval::from_rational(geo.tan_theta_sq, p));
    Interval two = Interval::from_int(BigInt(2), p);
    Interval v = two * k / c + t * r->kappa_sq;
    return make_condition(v, "sin^2(theta)=" + geo.sin_theta_sq.get_str() + " kappa=" + k.mid().str(12));
  });
}

/// Same quantity in double interval arithmetic (n <= 3), or nullopt.
inline std::optional<FastEnclosure> cond_ls_fast(const IntMatrix& a, const LeastSquaresGeometry& geo) {
  auto q = kappa_sq_fast(gram(a));
  if (!q) return std::nullopt;
  using detail::DInterval;
  DInterval k = detail::dsqrt(*q);
  DInterval c = detail::dsqrt(DInterval::from_rational(geo.cos_theta_sq.get_mpq_t()));
  DInterval t = detail::dsqrt(DInterval::from_rational(geo.tan_theta_sq.get_mpq_t()));
  DInterval v = DInterval::point(2.0) * k / c + t * *q;
  return FastEnclosure{detail::dlog2(v), (v.lo + v.hi) / 2.0};
}

/// Which eigenvalue(s) cond_nse looks at: an index into poly_roots order of
/// char_poly(A), or all simple eigenvalues.
struct EigenSelector {
  std::optional<std::size_t> index;
  static EigenSelector all() { return {}; }
  static EigenSelector at(std::size_t i) { return {i}; }
};

/// Entries of adj(tI - A) as integer polynomials in t (Faddeev-LeVerrier).
inline Matrix<IntPolynomial> adjugate_polynomial(const IntMatrix& a) {
  const std::size_t n = a.rows();
  IntPolynomial p = char_poly(a);
  if (n % 2 == 1) p = BigInt(-1) * p;  // monic det(tI - A)
  std::vector<std::vector<std::vector<BigInt>>> e(n, std::vector<std::vector<BigInt>>(n, std::vector<BigInt>(n, 0)));
  IntMatrix m = IntMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      m = a * m;
      for (std::size_t i = 0; i < n; ++i) m(i, i) += p[n - k + 1];
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) e[i][j][n - k] = m(i, j);
  }
  Matrix<IntPolynomial> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = IntPolynomial(e[i][j]);
  return out;
}

/// cond_NSE(A, λ) = 1/|y* x| for unit right/left eigenvectors. The enclosure
/// uses adj(λI - A) = p'(λ) x y* / (y* x), i.e. cond = ‖adj(λI - A)‖_F / |p'(λ)|,
/// which is polynomial in λ; the reported raw value comes from null vectors.
inline ConditionValue cond_nse(const IntMatrix& a, EigenSelector which = EigenSelector::all(),
                               long prec = kDefaultPrecision) {
  if (!a.square()) throw DimensionError("cond_nse: matrix is not square");
  const std::size_t n = a.rows();
  if (n == 0) throw DimensionError("cond_nse: empty matrix");
  IntPolynomial p = char_poly(a);
  IntPolynomial dp = p.derivative();
  Matrix<IntPolynomial> adj = adjugate_polynomial(a);
  return detail::with_escalation(prec, "cond_nse", [&](long pr) -> std::optional<ConditionValue> {
    ComplexList roots = poly_roots(p, pr);
    std::vector<std::size_t> sel;
    if (which.index) {
      if (*which.index >= roots.size()) throw DomainError("cond_nse: eigenvalue index out of range");
      if (roots[*which.index].multiplicity != 1)
        throw DegenerateInstance("cond_nse: selected eigenvalue is multiple");
      sel.push_back(*which.index);
    } else {
      for (std::size_t i = 0; i < roots.size(); ++i)
        if (roots[i].multiplicity == 1) sel.push_back(i);
      if (sel.empty()) throw DegenerateInstance("cond_nse: no simple eigenvalue");
    }
    Interval best;
    std::size_t arg = sel.front();
    bool first = true;
    for (std::size_t i : sel) {
      Interval s = Interval::from_int(BigInt(0), pr);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          Interval m = detail::eval_disc(adj(r, c), roots[i], pr).modulus();
          s = s + m * m;
        }
      Interval den = detail::eval_disc(dp, roots[i], pr).modulus();
      if (den.lo.sign() <= 0) return std::nullopt;
      Interval v = sqrt(s) / den;
      if (first || v.hi > best.hi) arg = i;
      if (first) {
        best = v;
        first = false;
      } else {
        best = {max(best.lo, v.lo), max(best.hi, v.hi)};
      }
    }
    ConditionValue out = make_condition(best, "lambda=" + to_string(roots[arg].value, 12));
    try {
      auto x = null_vector(a, roots[arg].value, pr);
      auto y = null_vector(a.transpose(), conj(roots[arg].value), pr);
      ExtComplex yx(pr);
      for (std::size_t k = 0; k < n; ++k) yx += conj(y[k]) * x[k];
      out.raw_value = div(ExtReal(1, pr), abs(yx));
    } catch (const DomainError&) {
    }
    return out;
  });
}

/// μ(f) = max over roots ζ of (Σ_{i=0}^d |ζ|^{2i})^{1/2} / |f'(ζ)|.
inline ConditionValue mu_univariate(const IntPolynomial& f, long prec = kDefaultPrecision) {
  if (f.degree() < 1) throw DomainError("mu_univariate: constant polynomial");
  if (!is_squarefree(f)) throw DegenerateInstance("mu_univariate: multiple roots");
  IntPolynomial df = f.derivative();
  const unsigned long d = static_cast<unsigned long>(f.degree());
  return detail::with_escalation(prec, "mu_univariate", [&](long p) -> std::optional<ConditionValue> {
    ComplexList roots = poly_roots(f, p);
    Interval best;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      Interval m = roots[i].modulus();
      Interval m2 = m * m;
      Interval s = Interval::from_int(BigInt(1), p);
      Interval pw = s;
      for (unsigned long k = 1; k <= d; ++k) {
        pw = pw * m2;
        s = s + pw;
      }
      Interval den = detail::eval_disc(df, roots[i], p).modulus();
      if (den.lo.sign() <= 0) return std::nullopt;
      Interval v = sqrt(s) / den;
      if (i == 0) {
        best = v;
      } else {
        if (v.hi > best.hi) arg = i;
        best = {max(best.lo, v.lo), max(best.hi, v.hi)};
      }
    }
    return make_condition(best, "zeta=" + to_string(roots[arg].value, 12));
  });
}

namespace detail {

using CVec = std::vector<ExtComplex>;
using CMat = std::vector<CVec>;

inline ExtComplex cdot(const CVec& u, const CVec& v) {
  ExtComplex s(u.front().precision());
  for (std::size_t i = 0; i < u.size(); ++i) s += conj(u[i]) * v[i];
  return s;
}

inline ExtReal cnorm(const CVec& v) {
  ExtReal s(v.front().precision());
  for (const auto& x : v) s += norm_sq(x);
  return sqrt(s);
}

/// Orthonormal basis of ζ^⊥ by pivoted Gram-Schmidt on the standard basis.
inline CMat tangent_basis(const CVec& zeta, long prec) {
  const std::size_t m = zeta.size();
  CMat q;
  CVec u = zeta;
  ExtReal nz = cnorm(zeta);
  for (auto& x : u) x = x / nz;
  q.push_back(u);
  std::vector<bool> used(m, false);
  CMat out;
  for (std::size_t step = 0; step + 1 < m; ++step) {
    std::size_t best = m;
    CVec bestv;
    ExtReal bestn(prec);
    for (std::size_t k = 0; k < m; ++k) {
      if (used[k]) continue;
      CVec w(m, ExtComplex(prec));
      w[k] = ExtComplex(ExtReal(1, prec), ExtReal(prec));
      for (const auto& b : q) {
        ExtComplex c = cdot(b, w);
        for (std::size_t i = 0; i < m; ++i) w[i] -= c * b[i];
      }
      ExtReal nw = cnorm(w);
      if (best == m || nw > bestn) {
        best = k;
        bestn = nw;
        bestv = std::move(w);
      }
    }
    used[best] = true;
    for (auto& x : bestv) x = x / bestn;
    q.push_back(bestv);
    out.push_back(bestv);
  }
  return out;
}

/// ∂F_i/∂x_j at ζ.
inline ExtComplex eval_hom(const HomPoly& f, const CVec& z, long prec, std::optional<std::size_t> dvar = {}) {
  ExtComplex s(prec);
  for (const auto& t : f.terms) {
    std::vector<unsigned> e = t.exps;
    BigInt c = t.coeff;
    if (dvar) {
      if (e[*dvar] == 0) continue;
      c *= e[*dvar];
      --e[*dvar];
    }
    ExtComplex term(ExtReal::from_int(c, prec), ExtReal(prec));
    for (std::size_t k = 0; k < e.size(); ++k)
      for (unsigned r = 0; r < e[k]; ++r) term = term * z[k];
    s += term;
  }
  return s;
}

/// Inverse by Gauss-Jordan with partial pivoting; nullopt if a pivot vanishes
/// at the working precision.
inline std::optional<CMat> cinverse(CMat m, long prec) {
  const std::size_t n = m.size();
  CMat inv(n, CVec(n, ExtComplex(prec)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = ExtComplex(ExtReal(1, prec), ExtReal(prec));
  ExtReal scale(prec);
  for (const auto& r : m)
    for (const auto& v : r) scale = max(scale, abs(v));
  const ExtReal tol = mul(ExtReal::pow2(-(prec / 2), prec), scale);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (abs(m[i][k]) > abs(m[p][k])) p = i;
    if (abs(m[p][k]) <= tol) return std::nullopt;
    std::swap(m[k], m[p]);
    std::swap(inv[k], inv[p]);
    ExtComplex piv = m[k][k];
    for (std::size_t j = 0; j < n; ++j) {
      m[k][j] = m[k][j] / piv;
      inv[k][j] = inv[k][j] / piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      ExtComplex f = m[i][k];
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] -= f * m[k][j];
        inv[i][j] -= f * inv[k][j];
      }
    }
  }
  return inv;
}

/// Largest eigenvalue of the Hermitian positive semidefinite matrix H.
inline ExtReal hermitian_lmax(const CMat& h, long prec) {
  const std::size_t n = h.size();
  if (n == 1) return h[0][0].re;
  if (n == 2) {
    ExtReal a = h[0][0].re, d = h[1][1].re;
    ExtReal half = div_si(a - d, 2);
    return div_si(a + d, 2) + sqrt(half * half + norm_sq(h[0][1]));
  }
  CVec v(n, ExtComplex(ExtReal(1, prec), ExtReal(prec)));
  ExtReal lam(prec);
  for (int it = 0; it < 4 * prec; ++it) {
    CVec w(n, ExtComplex(prec));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) w[i] += h[i][j] * v[j];
    ExtReal nw = cnorm(w);
    if (nw.is_zero()) return nw;
    for (auto& x : w) x = x / nw;
    ExtReal prev = lam;
    lam = nw;
    v = std::move(w);
    if (it > 8 && abs(lam - prev) <= mul(ExtReal::pow2(-(prec - 8), prec), lam)) break;
  }
  return lam;
}

}  // namespace detail

/// μ(F, ζ) = ‖F‖ ‖(DF(ζ)|_{T_ζ})^{-1} diag(‖ζ‖^{d_i - 1})‖ for a projective
/// root ζ of a square homogeneous system. Floating-point value (no enclosure).
inline ConditionValue mu_system(const HomogeneousSystem& f, const std::vector<ExtComplex>& zeta,
                                long prec = kDefaultPrecision) {
  f.validate();
  const std::size_t n = f.n;
  if (zeta.size() != n + 1) throw DimensionError("mu_system: zeta needs n+1 coordinates");
  detail::CVec z;
  for (const auto& c : zeta) z.emplace_back(with_precision(c.re, prec), with_precision(c.im, prec));
  ExtReal nz = detail::cnorm(z);
  if (nz.is_zero()) throw DomainError("mu_system: zeta is the zero vector");

  const ExtReal tol = ExtReal::pow2(-(prec / 3), prec);
  for (std::size_t i = 0; i < n; ++i) {
    ExtReal scale = mul(ExtReal::from_int(f.polys[i].max_abs_coeff(), prec),
                        pow_ui(nz, f.polys[i].degree));
    scale = mul_si(scale, static_cast<long>(std::max<std::size_t>(1, f.polys[i].support())));
    if (abs(detail::eval_hom(f.polys[i], z, prec)) > mul(tol, scale))
      throw DomainError("mu_system: zeta is not a root of F_" + std::to_string(i + 1));
  }

  detail::CMat basis = detail::tangent_basis(z, prec);
  detail::CMat m(n, detail::CVec(n, ExtComplex(prec)));
  for (std::size_t i = 0; i < n; ++i) {
    detail::CVec row(n + 1, ExtComplex(prec));
    for (std::size_t j = 0; j <= n; ++j) row[j] = detail::eval_hom(f.polys[i], z, prec, j);
    for (std::size_t c = 0; c < n; ++c) {
      ExtComplex s(prec);
      for (std::size_t j = 0; j <= n; ++j) s += row[j] * basis[c][j];
      m[i][c] = s;
    }
  }
  auto inv = detail::cinverse(m, prec);
  if (!inv) throw DegenerateInstance("mu_system: restricted Jacobian is singular");
  for (std::size_t c = 0; c < n; ++c) {
    ExtReal s = pow_ui(nz, f.polys[c].degree - 1);
    for (std::size_t r = 0; r < n; ++r) (*inv)[r][c] = (*inv)[r][c] * s;
  }
  detail::CMat h(n, detail::CVec(n, ExtComplex(prec)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) h[i][j] += conj((*inv)[k][i]) * (*inv)[k][j];
  ExtReal op = sqrt(detail::hermitian_lmax(h, prec));
  ExtReal fn = sqrt(ExtReal::from_rational(system_norm(f).norm_squared, prec));
  ExtReal mu = mul(fn, op);
  // Not an enclosure; a few ulps either side keep the log2 pair ordered.
  ExtReal slack = mul(mu, ExtReal::pow2(-(prec / 2), prec));
  return make_condition({sub(mu, slack, Rounding::down), add(mu, slack, Rounding::up)}, "mu=" + mu.str(12));
}

namespace detail {

/// Distinct values from a root list (copies of multiple roots collapse).
inline ComplexList distinct_roots(const ComplexList& roots) {
  ComplexList out;
  for (const auto& r : roots) {
    bool dup = false;
    for (const auto& o : out) dup = dup || (o.value.re == r.value.re && o.value.im == r.value.im);
    if (!dup) out.push_back(r);
  }
  return out;
}

inline bool all_exact_real(const ComplexList& roots) {
  for (const auto& r : roots)
    if (!r.exact() || !r.value.im.is_zero()) return false;
  return true;
}

}  // namespace detail

/// Smallest relative separation |λ_i - λ_j| / max(|λ_i|, |λ_j|) over pairs of
/// distinct eigenvalues of a symmetric matrix; infinite if all are equal.
inline ConditionValue relgap_matrix(const IntMatrix& a, long prec = kDefaultPrecision) {
  if (!a.square()) throw DimensionError("relgap_matrix: matrix is not square");
  if (!a.symmetric()) throw DomainError("relgap_matrix: matrix is not symmetric");
  return detail::with_escalation(prec, "relgap_matrix", [&](long p) -> std::optional<ConditionValue> {
    ComplexList lam = detail::distinct_roots(sym_eigenvalues(a, p));
    if (lam.size() < 2) return infinite_condition("single eigenvalue", p);
    Interval best;
    std::pair<std::size_t, std::size_t> arg{0, 1};
    std::optional<BigRational> exact;
    const bool rational = detail::all_exact_real(lam);
    bool first = true;
    for (std::size_t i = 0; i < lam.size(); ++i)
      for (std::size_t j = i + 1; j < lam.size(); ++j) {
        Interval li = lam[i].real_interval(), lj = lam[j].real_interval();
        Interval ai = abs(li), aj = abs(lj);
        Interval den{max(ai.lo, aj.lo), max(ai.hi, aj.hi)};
        if (den.lo.sign() <= 0) return std::nullopt;
        Interval v = abs(li - lj) / den;
        if (rational) {
          BigRational x = lam[i].value.re.to_rational(), y = lam[j].value.re.to_rational();
          BigRational q = abs(x - y) / std::max(abs(x), abs(y));
          if (!exact || q < *exact) exact = q;
        }
        if (first || v.hi < best.hi) arg = {i, j};
        if (first) {
          best = v;
          first = false;
        } else {
          best = {min(best.lo, v.lo), min(best.hi, v.hi)};
        }
      }
    std::string w = "pair=(" + lam[arg.first].value.re.str(12) + "," + lam[arg.second].value.re.str(12) + ")";
    if (exact) return make_exact_condition(*exact, p, w);
    return make_condition(best, w);
  });
}

/// Smallest adjacent ratio minus one among the distinct nonzero root moduli,
/// min_i |ζ_i| / |ζ_{i+1}| - 1 (moduli descending); infinite when all equal.
/// Moduli whose enclosures overlap are treated as equal.
inline ConditionValue relgap_poly(const IntPolynomial& f, long prec = kDefaultPrecision) {
  if (f.degree() < 2) throw DomainError("relgap_poly: degree must be at least 2");
  return detail::with_escalation(prec, "relgap_poly", [&](long p) -> std::optional<ConditionValue> {
    ComplexList roots;
    for (auto& r : detail::distinct_roots(poly_roots(f, p)))
      if (!(r.exact() && r.value.is_zero())) roots.push_back(r);
    struct Cluster {
      Interval m;
      std::optional<BigRational> exact;
      std::string who;
    };
    std::vector<Cluster> cl;
    for (const auto& r : roots) {
      Cluster c{r.modulus(), std::nullopt, to_string(r.value, 12)};
      if (r.exact() && r.value.im.is_zero()) c.exact = abs(r.value.re.to_rational());
      bool merged = false;
      for (auto& o : cl) {
        if (o.m.overlaps(c.m)) {
          o.m = hull(o.m, c.m);
          if (!(o.exact && c.exact && *o.exact == *c.exact)) o.exact.reset();
          merged = true;
          break;
        }
      }
      if (!merged) cl.push_back(c);
    }
    if (cl.size() < 2) return infinite_condition("all nonzero roots share one modulus", p);
    std::sort(cl.begin(), cl.end(), [](const Cluster& a, const Cluster& b) { return a.m.lo > b.m.lo; });
    for (std::size_t i = 0; i + 1 < cl.size(); ++i)
      if (cl[i].m.overlaps(cl[i + 1].m)) return std::nullopt;
    Interval best;
    std::size_t arg = 0;
    bool rational = true;
    for (const auto& c : cl) rational = rational && c.exact.has_value();
    std::optional<BigRational> exact;
    const Interval one = Interval::from_int(BigInt(1), p);
    for (std::size_t i = 0; i + 1 < cl.size(); ++i) {
      Interval v = cl[i].m / cl[i + 1].m - one;
      if (rational) {
        BigRational q = *cl[i].exact / *cl[i + 1].exact - 1;
        if (!exact || q < *exact) exact = q;
      }
      if (i == 0 || v.hi < best.hi) arg = i;
      best = i == 0 ? v : Interval{min(best.lo, v.lo), min(best.hi, v.hi)};
    }
    std::string w = "moduli=(" + cl[arg].m.mid().str(12) + "," + cl[arg + 1].m.mid().str(12) + ")";
    if (exact) return make_exact_condition(*exact, p, w);
    return make_condition(best, w);
  });
}

}  // namespace condbound

#endif  // CONDBOUND_CONDITION_HPP
