#ifndef CONDBOUND_HARNESS_FAMILY_HPP
#define CONDBOUND_HARNESS_FAMILY_HPP

// Instance families and their generators.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "condbound/condition.hpp"
#include "condbound/heights.hpp"
#include "condbound/numcore.hpp"

namespace condbound::harness {

using condbound::to_string;

enum class Problem { linsys, lsq, nse, unipoly, system, relgap_mat, relgap_poly };
enum class Mode { exhaustive, random, adversarial, file };

inline const char* to_string(Problem p) {
  switch (p) {
    case Problem::linsys: return "linsys";
    case Problem::lsq: return "lsq";
    case Problem::nse: return "nse";
    case Problem::unipoly: return "unipoly";
    case Problem::system: return "system";
    case Problem::relgap_mat: return "relgap_mat";
    case Problem::relgap_poly: return "relgap_poly";
  }
  return "?";
}

inline const char* to_string(Mode m) {
  switch (m) {
    case Mode::exhaustive: return "exhaustive";
    case Mode::random: return "random";
    case Mode::adversarial: return "adversarial";
    case Mode::file: return "file";
  }
  return "?";
}

inline Problem parse_problem(const std::string& s) {
  static const std::map<std::string, Problem> names{
      {"linsys", Problem::linsys},         {"lsq", Problem::lsq},
      {"nse", Problem::nse},               {"unipoly", Problem::unipoly},
      {"system", Problem::system},         {"relgap_mat", Problem::relgap_mat},
      {"relgap_poly", Problem::relgap_poly}};
  auto it = names.find(s);
  if (it == names.end()) throw DomainError("unknown problem '" + s + "'");
  return it->second;
}

inline Mode parse_mode(const std::string& s) {
  if (s == "exhaustive") return Mode::exhaustive;
  if (s == "random") return Mode::random;
  if (s == "adversarial") return Mode::adversarial;
  if (s == "file") return Mode::file;
  throw DomainError("unknown mode '" + s + "'");
}

/// Theorem that a problem is checked against.
inline int theorem_for(Problem p) {
  switch (p) {
    case Problem::linsys: return 1;
    case Problem::lsq: return 2;
    case Problem::nse: return 3;
    case Problem::unipoly: return 4;
    case Problem::system: return 5;
    case Problem::relgap_mat: return 6;
    case Problem::relgap_poly: return 7;
  }
  return 0;
}

inline Problem problem_for(int theorem) {
  if (theorem < 1 || theorem > 7) throw DomainError("theorem must be in 1..7");
  static const Problem table[] = {Problem::linsys,  Problem::lsq,        Problem::nse,        Problem::unipoly,
                                  Problem::system, Problem::relgap_mat, Problem::relgap_poly};
  return table[theorem - 1];
}

inline constexpr std::uint64_t kExhaustiveCap = 10'000'000;

struct InstanceFamily {
  Problem problem = Problem::linsys;
  Mode mode = Mode::exhaustive;
  unsigned long n = 2;
  unsigned long m = 0;  // lsq rows; 0 means n
  unsigned long d = 2;  // polynomial degree, or max degree for systems
  long coeff_max = 1;
  std::optional<long> coeff_min;  // defaults to -coeff_max
  bool spd_only = false;          // relgap_mat: keep positive definite matrices only
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> count;
  std::string input;  // file mode

  long lo() const { return coeff_min.value_or(-coeff_max); }
  long hi() const { return coeff_max; }
  unsigned long rows() const { return m ? m : n; }

  std::string descriptor() const {
    std::ostringstream os;
    os << to_string(problem) << '/' << to_string(mode);
    switch (problem) {
      case Problem::lsq: os << "/m=" << rows() << "/n=" << n; break;
      case Problem::unipoly:
      case Problem::relgap_poly: os << "/d=" << d; break;
      case Problem::system: os << "/n=" << n << "/D=" << d; break;
      default: os << "/n=" << n;
    }
    if (mode == Mode::file) {
      os << "/input=" << input;
    } else {
      os << "/range=[" << lo() << ',' << hi() << ']';
    }
    if (spd_only) os << "/spd";
    if (mode == Mode::random || mode == Mode::adversarial || problem == Problem::system) os << "/seed=" << seed;
    return os.str();
  }
};

/// One problem instance. Only the fields relevant to `problem` are set.
struct Instance {
  Problem problem = Problem::linsys;
  IntMatrix a;
  IntVector b;
  IntPolynomial f;
  HomogeneousSystem system;
  std::vector<BigInt> zeta;

  std::string text() const;
};

inline std::string hom_to_string(const HomPoly& p) {
  std::string s;
  for (const auto& t : p.terms) {
    if (!s.empty()) s += '+';
    s += t.coeff.get_str();
    for (std::size_t k = 0; k < t.exps.size(); ++k)
      if (t.exps[k]) s += "*x" + std::to_string(k) + (t.exps[k] > 1 ? "^" + std::to_string(t.exps[k]) : "");
  }
  return s.empty() ? "0" : s;
}

inline std::string Instance::text() const {
  switch (problem) {
    case Problem::lsq: return "A=" + to_string(a) + " b=" + to_string(b);
    case Problem::unipoly:
    case Problem::relgap_poly: return "f=" + f.str();
    case Problem::system: {
      std::string s = "F=(";
      for (std::size_t i = 0; i < system.polys.size(); ++i) s += (i ? "; " : "") + hom_to_string(system.polys[i]);
      return s + ") zeta=" + to_string(zeta);
    }
    default: return "A=" + to_string(a);
  }
}

/// Stable 64-bit FNV-1a of the canonical instance text, as 16 hex digits.
inline std::string instance_id(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// max |coefficient| of the instance as used by its bound; heights are at
/// least 1, so an all-zero instance gets H = 1.
inline BigInt instance_height(const Instance& x) {
  BigInt h;
  switch (x.problem) {
    case Problem::lsq: h = std::max(max_abs_entry(x.a), max_abs_entry(x.b)); break;
    case Problem::unipoly:
    case Problem::relgap_poly: h = x.f.max_abs_coeff(); break;
    case Problem::system: h = x.system.max_abs_coeff(); break;
    default: h = max_abs_entry(x.a);
  }
  return h < 1 ? BigInt(1) : h;
}

namespace detail {

/// Exact determinant, with an int64 shortcut for small 2x2 and 3x3 input.
inline bool singular(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n <= 3) {
    bool small = true;
    std::int64_t v[3][3];
    for (std::size_t i = 0; i < n && small; ++i)
      for (std::size_t j = 0; j < n && small; ++j) {
        small = a(i, j).fits_slong_p() && abs(a(i, j)) < (1L << 20);
        if (small) v[i][j] = a(i, j).get_si();
      }
    if (small) {
      if (n == 1) return v[0][0] == 0;
      if (n == 2) return v[0][0] * v[1][1] - v[0][1] * v[1][0] == 0;
      return v[0][0] * (v[1][1] * v[2][2] - v[1][2] * v[2][1]) - v[0][1] * (v[1][0] * v[2][2] - v[1][2] * v[2][0]) +
                 v[0][2] * (v[1][0] * v[2][1] - v[1][1] * v[2][0]) ==
             0;
    }
  }
  return determinant(a) == 0;
}

inline bool scalar_matrix(const IntMatrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i == j ? a(i, j) != a(0, 0) : a(i, j) != 0) return false;
  return true;
}

inline bool positive_definite(const IntMatrix& a) {
  for (std::size_t k = 1; k <= a.rows(); ++k) {
    IntMatrix m(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m(i, j) = a(i, j);
    if (determinant(m) <= 0) return false;
  }
  return true;
}

}  // namespace detail

/// Exact degeneracy test; the reason string, or nullopt for a regular
/// instance. relgap_poly with all moduli equal is only detected by verify.
inline std::optional<std::string> degeneracy(const Instance& x) {
  switch (x.problem) {
    case Problem::linsys:
      if (detail::singular(x.a)) return "singular: det(A)=0";
      return std::nullopt;
    case Problem::lsq: {
      if (detail::singular(gram(x.a))) return "rank-deficient: det(A^T A)=0";
      IntVector atb = x.a.transpose() * x.b;
      for (const auto& v : atb)
        if (v != 0) return std::nullopt;
      return "b orthogonal to im(A)";
    }
    case Problem::nse:
      if (!is_squarefree(char_poly(x.a))) return "multiple eigenvalue";
      return std::nullopt;
    case Problem::unipoly:
      if (!is_squarefree(x.f)) return "multiple root";
      return std::nullopt;
    case Problem::relgap_mat:
      if (detail::scalar_matrix(x.a)) return "all eigenvalues equal";
      return std::nullopt;
    case Problem::relgap_poly:
      if (x.f.degree() < 2) return "single root";
      return std::nullopt;
    case Problem::system: return std::nullopt;
  }
  return std::nullopt;
}

using InstanceSink = std::function<bool(Instance&&)>;

namespace detail {

inline BigInt ipow_u(unsigned long base, unsigned long e) { return ipow(BigInt(base), e); }

/// Number of free integer slots for the exhaustive enumeration.
inline unsigned long slot_count(const InstanceFamily& fam) {
  switch (fam.problem) {
    case Problem::lsq: return fam.rows() * fam.n + fam.rows();
    case Problem::unipoly:
    case Problem::relgap_poly: return fam.d + 1;
    case Problem::relgap_mat: return fam.n * (fam.n + 1) / 2;
    default: return fam.n * fam.n;
  }
}

inline Instance from_slots(const InstanceFamily& fam, const std::vector<long>& s) {
  Instance x;
  x.problem = fam.problem;
  switch (fam.problem) {
    case Problem::lsq: {
      const std::size_t m = fam.rows(), n = fam.n;
      x.a = IntMatrix(m, n);
      x.b = IntVector(m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) x.a(i, j) = s[i * n + j];
      for (std::size_t i = 0; i < m; ++i) x.b[i] = s[m * n + i];
      break;
    }
    case Problem::unipoly:
    case Problem::relgap_poly: {
      // Slots are high-degree first.
      std::vector<BigInt> hf(s.begin(), s.end());
      x.f = IntPolynomial::from_high_first(hf);
      break;
    }
    case Problem::relgap_mat: {
      x.a = IntMatrix(fam.n, fam.n);
      std::size_t k = 0;
      for (std::size_t i = 0; i < fam.n; ++i)
        for (std::size_t j = i; j < fam.n; ++j, ++k) {
          x.a(i, j) = s[k];
          x.a(j, i) = s[k];
        }
      break;
    }
    default: {
      x.a = IntMatrix(fam.n, fam.n);
      for (std::size_t i = 0; i < fam.n; ++i)
        for (std::size_t j = 0; j < fam.n; ++j) x.a(i, j) = s[i * fam.n + j];
    }
  }
  return x;
}

/// Leading polynomial coefficient must be nonzero (exact degree d).
inline bool leading_slot_nonzero(const InstanceFamily& fam) {
  return fam.problem == Problem::unipoly || fam.problem == Problem::relgap_poly;
}

inline bool keep(const InstanceFamily& fam, const Instance& x) {
  if (fam.problem == Problem::relgap_mat && fam.spd_only) return positive_definite(x.a);
  return true;
}

// Homogeneous polynomial helpers for system generation.
inline void compositions(unsigned total, std::size_t parts, std::vector<unsigned>& cur,
                         std::vector<std::vector<unsigned>>& out) {
  if (cur.size() + 1 == parts) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (unsigned k = 0; k <= total; ++k) {
    cur.push_back(total - k);
    compositions(k, parts, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<unsigned>> monomials(unsigned degree, std::size_t nvars) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  compositions(degree, nvars, cur, out);
  return out;
}

inline HomPoly hom_mul(const HomPoly& p, const HomPoly& q) {
  std::map<std::vector<unsigned>, BigInt> acc;
  for (const auto& s : p.terms)
    for (const auto& t : q.terms) {
      std::vector<unsigned> e(s.exps);
      for (std::size_t k = 0; k < e.size(); ++k) e[k] += t.exps[k];
      acc[e] += s.coeff * t.coeff;
    }
  HomPoly r{p.nvars, p.degree + q.degree, {}};
  for (auto& [e, c] : acc)
    if (c != 0) r.terms.push_back({c, e});
  return r;
}

inline HomPoly hom_add(const HomPoly& p, const HomPoly& q) {
  std::map<std::vector<unsigned>, BigInt> acc;
  for (const auto& t : p.terms) acc[t.exps] += t.coeff;
  for (const auto& t : q.terms) acc[t.exps] += t.coeff;
  HomPoly r{p.nvars, p.degree, {}};
  for (auto& [e, c] : acc)
    if (c != 0) r.terms.push_back({c, e});
  return r;
}

}  // namespace detail

class Generator {
 public:
  explicit Generator(InstanceFamily fam) : fam_(std::move(fam)), rng_(fam_.seed) {}

  /// Instances the exhaustive enumeration visits before filtering.
  BigInt exhaustive_total() const {
    const unsigned long k = static_cast<unsigned long>(fam_.hi() - fam_.lo() + 1);
    const unsigned long slots = detail::slot_count(fam_);
    if (detail::leading_slot_nonzero(fam_)) {
      unsigned long lead = k - ((fam_.lo() <= 0 && fam_.hi() >= 0) ? 1 : 0);
      return BigInt(lead) * detail::ipow_u(k, slots - 1);
    }
    return detail::ipow_u(k, slots);
  }

  /// Feeds instances to `sink` until it returns false; returns how many were
  /// delivered.
  std::uint64_t run(const InstanceSink& sink) {
    validate();
    switch (fam_.mode) {
      case Mode::exhaustive: return exhaustive(sink);
      case Mode::random: return sampled(sink, false);
      case Mode::adversarial: return sampled(sink, true);
      case Mode::file: return from_file(sink);
    }
    return 0;
  }

 private:
  void validate() const {
    if (fam_.n < 1) throw DomainError("family: n must be >= 1");
    if (fam_.problem == Problem::lsq && fam_.rows() < fam_.n) throw DomainError("family: lsq needs m >= n");
    if ((fam_.problem == Problem::unipoly || fam_.problem == Problem::relgap_poly || fam_.problem == Problem::system) &&
        fam_.d < 1)
      throw DomainError("family: d must be >= 1");
    if (fam_.mode != Mode::file && fam_.lo() > fam_.hi()) throw DomainError("family: empty coefficient range");
    if (fam_.mode == Mode::exhaustive && fam_.problem == Problem::system)
      throw DomainError("family: exhaustive mode is not available for systems");
  }

  std::uint64_t exhaustive(const InstanceSink& sink) {
    BigInt total = exhaustive_total();
    const std::uint64_t cap = std::min<std::uint64_t>(fam_.count.value_or(kExhaustiveCap), kExhaustiveCap);
    if (total > BigInt(static_cast<unsigned long>(cap)))
      throw BudgetError("exhaustive family " + fam_.descriptor() + " has " + total.get_str() +
                            " instances, above the cap of " + std::to_string(cap),
                        total.fits_ulong_p() ? total.get_ui() : ~std::uint64_t{0}, cap);
    const std::size_t slots = detail::slot_count(fam_);
    std::vector<long> s(slots, fam_.lo());
    const bool lead = detail::leading_slot_nonzero(fam_);
    std::uint64_t delivered = 0;
    while (true) {
      if (!(lead && s[0] == 0)) {
        Instance x = detail::from_slots(fam_, s);
        if (detail::keep(fam_, x)) {
          ++delivered;
          if (!sink(std::move(x))) return delivered;
        }
      }
      std::size_t i = slots;
      while (i > 0 && s[i - 1] == fam_.hi()) s[--i] = fam_.lo();
      if (i == 0) break;
      ++s[i - 1];
    }
    return delivered;
  }

  long draw(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  Instance random_instance() {
    if (fam_.problem == Problem::system) return random_system();
    std::vector<long> s(detail::slot_count(fam_));
    for (auto& v : s) v = draw(fam_.lo(), fam_.hi());
    if (detail::leading_slot_nonzero(fam_))
      while (s[0] == 0) s[0] = draw(fam_.lo(), fam_.hi());
    return detail::from_slots(fam_, s);
  }

  /// F_i = sum_j G_ij (zeta_0 x_j - zeta_j x_0), so zeta is a root by construction.
  Instance random_system() {
    Instance x;
    x.problem = Problem::system;
    const std::size_t nv = fam_.n + 1;
    x.zeta.resize(nv);
    do {
      for (auto& z : x.zeta) z = draw(fam_.lo(), fam_.hi());
    } while (x.zeta[0] == 0);
    x.system.n = fam_.n;
    for (std::size_t i = 0; i < fam_.n; ++i) {
      const unsigned deg = static_cast<unsigned>(draw(1, static_cast<long>(fam_.d)));
      HomPoly fi{nv, deg, {}};
      auto basis = detail::monomials(deg - 1, nv);
      for (std::size_t j = 1; j < nv; ++j) {
        HomPoly lin{nv, 1, {}};
        std::vector<unsigned> ej(nv, 0), e0(nv, 0);
        ej[j] = 1;
        e0[0] = 1;
        lin.terms.push_back({x.zeta[0], ej});
        if (x.zeta[j] != 0) lin.terms.push_back({BigInt(-x.zeta[j]), e0});
        HomPoly g{nv, deg - 1, {}};
        for (const auto& e : basis) {
          long c = draw(-1, 1);
          if (c != 0) g.terms.push_back({c, e});
        }
        if (g.terms.empty()) g.terms.push_back({1, basis[static_cast<std::size_t>(draw(0, static_cast<long>(basis.size()) - 1))]});
        fi = detail::hom_add(fi, detail::hom_mul(g, lin));
      }
      x.system.polys.push_back(fi);
    }
    return x;
  }

  bool in_range(const Instance& x) const {
    auto ok = [&](const BigInt& v) { return v >= fam_.lo() && v <= fam_.hi(); };
    switch (x.problem) {
      case Problem::unipoly:
      case Problem::relgap_poly:
        if (x.f.degree() != static_cast<int>(fam_.d)) return false;
        for (const auto& c : x.f.coeffs())
          if (!ok(c)) return false;
        return true;
      case Problem::system: return true;
      default:
        for (const auto& v : x.a.entries())
          if (!ok(v)) return false;
        for (const auto& v : x.b)
          if (!ok(v)) return false;
        return true;
    }
  }

  long sign() { return draw(0, 1) ? 1 : -1; }

  /// Random small perturbation: each slot is nonzero with probability 1/3.
  long sparse_unit() { return draw(0, 2) == 0 ? sign() : 0; }

  /// Near-degenerate draws; may fall outside the range, see adversarial().
  Instance adversarial_candidate() {
    Instance x;
    x.problem = fam_.problem;
    const long r = std::max(std::abs(fam_.lo()), std::abs(fam_.hi()));
    const std::size_t n = fam_.n;
    switch (fam_.problem) {
      case Problem::linsys: {
        // N u vᵀ + E: a scaled rank-one matrix plus a sparse unit perturbation.
        const long big = draw(1, std::max(1L, r));
        std::vector<long> u(n), v(n);
        for (auto& e : u) e = sign();
        for (auto& e : v) e = sign();
        x.a = IntMatrix(n, n);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) x.a(i, j) = big * u[i] * v[j] + sparse_unit();
        return x;
      }
      case Problem::nse: {
        // Close diagonal, large coupling above it: strongly non-normal.
        x.a = IntMatrix(n, n, BigInt(0));
        const long base = draw(fam_.lo(), fam_.hi());
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            if (i == j) x.a(i, j) = base + static_cast<long>(i % 2) * sign();
            else if (j > i) x.a(i, j) = draw(std::max(1L, r / 2), std::max(1L, r)) * sign();
            else x.a(i, j) = draw(0, 3) == 0 ? sparse_unit() : 0;
          }
        return x;
      }
      case Problem::lsq: {
        // b = w + e with w in null(Aᵀ): b nearly orthogonal to im(A).
        Instance y = random_instance();
        const std::size_t m = fam_.rows();
        if (m == n) return y;
        RatMatrix at = to_rational(y.a.transpose());
        RatMatrix sq(n, n);
        RatVector rhs(n);
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) sq(i, j) = at(i, j);
          rhs[i] = -at(i, n);
        }
        try {
          RatVector w = exact_solve(sq, rhs);
          std::vector<BigRational> full(w.begin(), w.end());
          full.push_back(1);
          for (std::size_t k = n + 1; k < m; ++k) full.push_back(0);
          BigInt den = 1;
          for (const auto& v : full) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
          BigInt h = 0;
          IntVector wi;
          for (const auto& v : full) {
            BigInt z = v.get_num() * (den / v.get_den());
            h = std::max(h, BigInt(abs(z)));
            wi.push_back(z);
          }
          BigInt scale = h == 0 ? BigInt(0) : BigInt(r) / h;
          if (scale == 0) scale = 1;
          for (std::size_t i = 0; i < m; ++i) y.b[i] = wi[i] * scale;
          y.b[static_cast<std::size_t>(draw(0, static_cast<long>(m) - 1))] += sign();
        } catch (const std::exception&) {
        }
        return y;
      }
      case Problem::unipoly: {
        // (x - a)(x - a - 1) u(x), or (x - a)² u(x) plus a unit perturbation.
        const long a = draw(-r, r);
        const bool close = draw(0, 1);
        IntPolynomial f = close ? IntPolynomial{a * a, -2 * a, 1} : IntPolynomial{a * (a + 1), -(2 * a + 1), 1};
        if (fam_.d < 2) f = IntPolynomial{-a, 1};
        f = pad(f);
        if (close && fam_.d >= 2) f = f + IntPolynomial::monomial(sign(), static_cast<std::size_t>(draw(0, 1)));
        x.f = f;
        return x;
      }
      case Problem::relgap_poly: {
        // c (x^d ± 1) plus a unit perturbation: moduli split from a common value.
        const long c = draw(1, std::max(1L, r));
        IntPolynomial f = IntPolynomial::monomial(c * sign(), fam_.d) +
                          IntPolynomial::constant(c * sign());
        const auto k = static_cast<std::size_t>(draw(0, static_cast<long>(fam_.d) - 1));
        f = f + IntPolynomial::monomial(sign(), k);
        for (std::size_t j = 1; j < fam_.d; ++j)
          if (j != k) f = f + IntPolynomial::monomial(draw(-1, 1), j);
        x.f = f;
        return x;
      }
      case Problem::relgap_mat: {
        // N I + E: eigenvalues cluster near N.
        const long big = draw(fam_.lo(), fam_.hi());
        x.a = IntMatrix(n, n);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i; j < n; ++j) {
            long v = i == j ? big + sparse_unit() : sparse_unit();
            x.a(i, j) = v;
            x.a(j, i) = v;
          }
        return x;
      }
      case Problem::system: return random_system();
    }
    return x;
  }

  /// Multiplies f by a random u(x) with coefficients in {-1, 0, 1} up to degree d.
  IntPolynomial pad(const IntPolynomial& f) {
    if (static_cast<unsigned long>(f.degree()) >= fam_.d) return f;
    std::vector<BigInt> u(fam_.d - static_cast<unsigned long>(f.degree()) + 1);
    for (auto& c : u) c = draw(-1, 1);
    while (u.back() == 0) u.back() = sign();
    return f * IntPolynomial(u);
  }

  /// Candidates outside the coefficient range are redrawn; after 1000
  /// misses a uniform draw is used.
  Instance adversarial_instance() {
    for (int i = 0; i < 1000; ++i) {
      Instance x = adversarial_candidate();
      if (in_range(x)) return x;
    }
    return random_instance();
  }

  /// Degeneracy that only shows once the instance is solved: equal root
  /// moduli, a singular root of a system.
  static bool late_degenerate(const Instance& x) {
    try {
      if (x.problem == Problem::relgap_poly) return relgap_poly(x.f).infinite;
      if (x.problem == Problem::system) {
        std::vector<ExtComplex> z;
        for (const auto& v : x.zeta) z.emplace_back(ExtReal::from_int(v, kDefaultPrecision), ExtReal(kDefaultPrecision));
        mu_system(x.system, z);
      }
    } catch (const DegenerateInstance&) {
      return true;
    }
    return false;
  }

  /// Random and adversarial draws are redrawn while degenerate (or filtered).
  std::uint64_t sampled(const InstanceSink& sink, bool adversarial) {
    const std::uint64_t count = fam_.count.value_or(1000);
    std::uint64_t delivered = 0;
    for (std::uint64_t k = 0; k < count; ++k) {
      Instance x;
      int attempts = 0;
      while (true) {
        x = adversarial ? adversarial_instance() : random_instance();
        if (detail::keep(fam_, x) && !degeneracy(x) && !late_degenerate(x)) break;
        if (++attempts > 10000)
          throw DomainError("family " + fam_.descriptor() + ": no regular instance after 10000 draws");
      }
      ++delivered;
      if (!sink(std::move(x))) break;
    }
    return delivered;
  }

  /// Matrices as "rows cols" blocks (lsq: followed by the m entries of b);
  /// polynomials one per line, highest degree first.
  std::uint64_t from_file(const InstanceSink& sink) {
    std::ifstream in(fam_.input);
    if (!in) throw DomainError("cannot open input file '" + fam_.input + "'");
    std::uint64_t delivered = 0;
    const std::uint64_t cap = fam_.count.value_or(kExhaustiveCap);
    if (fam_.problem == Problem::unipoly || fam_.problem == Problem::relgap_poly) {
      std::string line;
      while (delivered < cap && std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
        Instance x;
        x.problem = fam_.problem;
        x.f = IntPolynomial::parse(line);
        ++delivered;
        if (!sink(std::move(x))) break;
      }
      return delivered;
    }
    if (fam_.problem == Problem::system) throw DomainError("file mode is not available for systems");
    while (delivered < cap) {
      in >> std::ws;
      if (in.eof()) break;
      Instance x;
      x.problem = fam_.problem;
      x.a = read_matrix(in);
      if (fam_.problem == Problem::lsq) {
        x.b = IntVector(x.a.rows());
        for (auto& v : x.b) {
          std::string tok;
          if (!(in >> tok) || v.set_str(tok, 10) != 0) throw DomainError("input: expected the entries of b");
        }
      } else if (!x.a.square()) {
        throw DimensionError("input: matrix is not square");
      }
      if (fam_.problem == Problem::relgap_mat && !x.a.symmetric()) throw DomainError("input: matrix is not symmetric");
      ++delivered;
      if (!sink(std::move(x))) break;
    }
    return delivered;
  }

  InstanceFamily fam_;
  std::mt19937_64 rng_;
};

}  // namespace condbound::harness

#endif  // CONDBOUND_HARNESS_FAMILY_HPP
