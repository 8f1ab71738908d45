#ifndef CONDBOUND_HARNESS_VERIFY_HPP
#define CONDBOUND_HARNESS_VERIFY_HPP

// Theorem-by-theorem verification of generated instances.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <map>
#include <thread>
#include <tuple>

#include "condbound/bounds.hpp"
#include "condbound/condition.hpp"
#include "condbound/harness/family.hpp"

namespace condbound::harness {

enum class Status { ok, violation, degenerate_skipped, inconclusive, reported };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::ok: return "ok";
    case Status::violation: return "violation";
    case Status::degenerate_skipped: return "degenerate_skipped";
    case Status::inconclusive: return "inconclusive";
    case Status::reported: return "reported";
  }
  return "?";
}

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Log2-domain fields are doubles: actual rounded toward the favourable side
/// for the bound (down for upper bounds, up for lower bounds), bound rounded
/// the other way. NaN marks "not computed" and is written as null.
struct VerificationRecord {
  std::string instance_id;
  std::string family;
  double actual_log2 = kNaN;
  double bound_log2 = kNaN;
  double margin_log2 = kNaN;
  Status status = Status::ok;
  std::string witness;
};

struct VerifyOptions {
  long precision_bits = kDefaultPrecision;
  bool fast_path = true;
  unsigned threads = 1;
  unsigned long thm5_constant = kDefaultThm5Constant;
};

struct Summary {
  std::string family;
  int theorem = 0;
  long precision_bits = kDefaultPrecision;
  std::map<Status, std::uint64_t> counts;
  std::uint64_t total = 0;
  double min_margin_log2 = kNaN;
  std::string argmin_id;
  std::string argmin_witness;
  std::string normalization;
  std::string timestamp;

  std::uint64_t count(Status s) const {
    auto it = counts.find(s);
    return it == counts.end() ? 0 : it->second;
  }

  /// 0 clean, 1 violations, 3 inconclusive records present.
  int exit_code() const {
    if (count(Status::violation)) return 1;
    if (count(Status::inconclusive)) return 3;
    return 0;
  }
};

inline std::string utc_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline std::string normalization_note(const InstanceFamily& fam) {
  if (fam.mode != Mode::exhaustive) return "none";
  std::string s = "none: every integer instance with coefficients in [" + std::to_string(fam.lo()) + "," +
                  std::to_string(fam.hi()) + "] enumerated lexicographically, last coefficient fastest";
  if (fam.problem == Problem::unipoly || fam.problem == Problem::relgap_poly) s += "; leading coefficient nonzero";
  if (fam.problem == Problem::relgap_mat) s += "; symmetric, upper triangle enumerated";
  if (fam.spd_only) s += "; positive definite only";
  return s;
}

/// Bound cache keyed by (theorem, n, m, d, H, precision). One per worker.
class BoundCache {
 public:
  explicit BoundCache(unsigned long thm5_constant = kDefaultThm5Constant) : c5_(thm5_constant) {}

  const Log2Bound& get(int theorem, unsigned long n, unsigned long m, unsigned long d, unsigned long s,
                       const BigInt& h, long prec) {
    Key k{theorem, n, m, d, s, h.get_str(16), prec};
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
    Log2Bound b;
    switch (theorem) {
      case 1: b = thm1_bound(n, h, prec); break;
      case 2: b = thm2_bound(n, m, h, prec); break;
      case 3: b = thm3_bound(n, h, prec); break;
      case 4: b = thm4_bound(d, h, prec); break;
      case 5: b = thm5_bound(n, s, d, h, c5_, prec); break;
      case 6: b = thm6_bound(n, h, prec); break;
      case 7: b = thm7_bound(d, h, prec); break;
      default: throw DomainError("no bound for theorem " + std::to_string(theorem));
    }
    return cache_.emplace(k, std::move(b)).first->second;
  }

  /// Both sides as doubles, rounded outward.
  std::pair<double, double> doubles(const Log2Bound& b) {
    return {b.log2.lo.to_double(Rounding::down), b.log2.hi.to_double(Rounding::up)};
  }

 private:
  using Key = std::tuple<int, unsigned long, unsigned long, unsigned long, unsigned long, std::string, long>;
  std::map<Key, Log2Bound> cache_;
  unsigned long c5_;
};

namespace detail {

struct Evaluation {
  ConditionValue actual;
  const Log2Bound* bound = nullptr;
};

inline std::vector<ExtComplex> to_complex(const std::vector<BigInt>& v, long prec) {
  std::vector<ExtComplex> out;
  for (const auto& x : v) out.emplace_back(ExtReal::from_int(x, prec), ExtReal(prec));
  return out;
}

/// Actual value and bound for one instance at one precision. Throws
/// DegenerateInstance on the degenerate locus.
inline Evaluation evaluate(const Instance& x, long prec, BoundCache& cache) {
  const BigInt h = instance_height(x);
  switch (x.problem) {
    case Problem::linsys:
      return {kappa(x.a, prec), &cache.get(1, x.a.rows(), 0, 0, 0, h, prec)};
    case Problem::lsq:
      return {cond_ls(x.a, x.b, prec), &cache.get(2, x.a.cols(), x.a.rows(), 0, 0, h, prec)};
    case Problem::nse:
      return {cond_nse(x.a, EigenSelector::all(), prec), &cache.get(3, x.a.rows(), 0, 0, 0, h, prec)};
    case Problem::unipoly:
      return {mu_univariate(x.f, prec), &cache.get(4, 0, 0, static_cast<unsigned long>(x.f.degree()), 0, h, prec)};
    case Problem::system: {
      const auto& s = x.system;
      return {mu_system(s, to_complex(x.zeta, prec), prec),
              &cache.get(5, s.n, 0, s.max_degree(), s.max_support(), h, prec)};
    }
    case Problem::relgap_mat: {
      ConditionValue v = relgap_matrix(x.a, prec);
      if (v.infinite) throw DegenerateInstance("relgap infinite: " + v.witness);
      return {v, &cache.get(6, x.a.rows(), 0, 0, 0, h, prec)};
    }
    case Problem::relgap_poly: {
      ConditionValue v = relgap_poly(x.f, prec);
      if (v.infinite) throw DegenerateInstance("relgap infinite: " + v.witness);
      return {v, &cache.get(7, 0, 0, static_cast<unsigned long>(x.f.degree()), 0, h, prec)};
    }
  }
  throw DomainError("evaluate: unknown problem");
}

/// ok / violation / undecided for an enclosure [alo, ahi] against [blo, bhi].
inline std::optional<Status> decide(bool lower, double alo, double ahi, double blo, double bhi) {
  if (!lower) {
    if (ahi <= blo) return Status::ok;
    if (alo > bhi) return Status::violation;
  } else {
    if (alo >= bhi) return Status::ok;
    if (ahi < blo) return Status::violation;
  }
  return std::nullopt;
}

inline std::optional<Status> decide(bool lower, const Interval& a, const Interval& b) {
  if (!lower) {
    if (a.hi <= b.lo) return Status::ok;
    if (a.lo > b.hi) return Status::violation;
  } else {
    if (a.lo >= b.hi) return Status::ok;
    if (a.hi < b.lo) return Status::violation;
  }
  return std::nullopt;
}

inline void fill(VerificationRecord& r, bool lower, double actual, double bound) {
  r.actual_log2 = actual;
  r.bound_log2 = bound;
  r.margin_log2 = lower ? actual - bound : bound - actual;
}

inline std::vector<BigInt> divisors(BigInt v) {
  v = abs(v);
  std::vector<BigInt> out;
  for (BigInt k = 1; k * k <= v; ++k)
    if (v % k == 0) {
      out.push_back(k);
      if (k * k != v) out.push_back(v / k);
    }
  return out;
}

inline BigRational eval_rational(const IntPolynomial& f, const BigRational& z) {
  BigRational acc = 0;
  for (int i = f.degree(); i >= 0; --i) acc = acc * z + f[static_cast<std::size_t>(i)];
  return acc;
}

/// All roots of a squarefree f when every one of them is rational (rational
/// root candidates, small end coefficients only).
inline std::optional<std::vector<BigRational>> rational_roots(const IntPolynomial& f) {
  std::vector<BigRational> roots;
  std::size_t low = 0;
  while (f[low] == 0) ++low;
  if (low > 1) return std::nullopt;
  if (low == 1) roots.emplace_back(0);
  const BigInt limit = 1000000;
  if (abs(f[low]) > limit || abs(f.leading()) > limit) return std::nullopt;
  for (const auto& p : divisors(f[low]))
    for (const auto& q : divisors(f.leading()))
      for (int sgn : {1, -1}) {
        BigRational z(sgn * p, q);
        z.canonicalize();
        if (eval_rational(f, z) == 0 && std::find(roots.begin(), roots.end(), z) == roots.end()) roots.push_back(z);
      }
  if (roots.size() != static_cast<std::size_t>(f.degree())) return std::nullopt;
  return roots;
}

/// Exact decision for ties the enclosures cannot separate: theorems 6 and 7
/// when the relgap is rational, theorem 4 when every root is rational
/// (μ² against the integer bound²).
inline std::optional<Status> decide_exact(const Instance& x, const ConditionValue& v) {
  const BigInt h = instance_height(x);
  if (x.problem == Problem::unipoly) {
    auto roots = rational_roots(x.f);
    if (!roots) return std::nullopt;
    const unsigned long d = static_cast<unsigned long>(x.f.degree());
    IntPolynomial df = x.f.derivative();
    BigRational mu2 = 0;
    for (const auto& z : *roots) {
      BigRational s = 0, z2 = z * z, pw = 1;
      for (unsigned long i = 0; i <= d; ++i, pw *= z2) s += pw;
      BigRational fd = eval_rational(df, z);
      mu2 = std::max(mu2, BigRational(s / (fd * fd)));
    }
    // bound² = 2^{4d²-4} d^{4d} H^{4d²}
    BigInt b2 = ipow(BigInt(2), 4 * d * d - 4) * ipow(BigInt(d), 4 * d) * ipow(h, 4 * d * d);
    return mu2 <= BigRational(b2) ? Status::ok : Status::violation;
  }
  if (!v.exact) return std::nullopt;
  BigRational b;
  if (x.problem == Problem::relgap_mat) b = thm6_rational(x.a.rows(), h);
  else if (x.problem == Problem::relgap_poly) b = thm7_rational(static_cast<unsigned long>(x.f.degree()), h);
  else return std::nullopt;
  return *v.exact >= b ? Status::ok : Status::violation;
}

}  // namespace detail

/// Verifies one instance. With `detailed` false the id and witness are left
/// empty for the fast path (the caller fills them on demand).
inline VerificationRecord verify_instance(const Instance& x, const std::string& family, const VerifyOptions& opt,
                                          BoundCache& cache, bool detailed = true) {
  VerificationRecord r;
  r.family = family;
  auto describe = [&](const std::string& extra) {
    if (detailed || r.status != Status::ok) {
      const std::string t = x.text();
      r.instance_id = instance_id(t);
      r.witness = extra.empty() ? t : t + "; " + extra;
    }
  };
  if (auto why = degeneracy(x)) {
    r.status = Status::degenerate_skipped;
    describe(*why);
    return r;
  }

  // Fast double kernel for theorems 1 and 2; certified or declined.
  if (opt.fast_path && (x.problem == Problem::linsys || x.problem == Problem::lsq) && x.a.cols() <= 3) {
    const BigInt h = instance_height(x);
    std::optional<FastEnclosure> fe;
    const Log2Bound* b;
    if (x.problem == Problem::linsys) {
      fe = kappa_fast(x.a);
      b = &cache.get(1, x.a.rows(), 0, 0, 0, h, opt.precision_bits);
    } else {
      fe = cond_ls_fast(x.a, least_squares_geometry(x.a, x.b));
      b = &cache.get(2, x.a.cols(), x.a.rows(), 0, 0, h, opt.precision_bits);
    }
    if (fe) {
      auto [blo, bhi] = cache.doubles(*b);
      if (auto st = detail::decide(false, fe->log2.lo, fe->log2.hi, blo, bhi); st == Status::ok) {
        r.status = Status::ok;
        detail::fill(r, false, fe->log2.lo, bhi);
        if (detailed) describe("value~" + std::to_string(fe->raw) + "; bound " + b->params.str());
        return r;
      }
    }
  }

  const long ceiling = std::max(max_precision_bits(), opt.precision_bits);
  for (long p = opt.precision_bits; p <= ceiling; p *= 2) {
    detail::Evaluation ev;
    try {
      ev = detail::evaluate(x, p, cache);
    } catch (const DegenerateInstance& e) {
      r.status = Status::degenerate_skipped;
      describe(e.what());
      return r;
    } catch (const PrecisionError& e) {
      r.status = Status::inconclusive;
      describe(e.what());
      return r;
    }
    const Log2Bound& b = *ev.bound;
    const bool lower = b.lower_bound;
    const Interval a = ev.actual.log2_interval();
    const std::string extra = ev.actual.witness + "; value~" + ev.actual.raw_value.str(12) + "; bound " + b.params.str();
    if (x.problem == Problem::system) {
      r.status = Status::reported;
      detail::fill(r, false, a.lo.to_double(Rounding::down), b.log2.hi.to_double(Rounding::up));
      describe(extra);
      return r;
    }
    std::optional<Status> st = detail::decide(lower, a, b.log2);
    if (!st) st = detail::decide_exact(x, ev.actual);
    if (st || p * 2 > ceiling) {
      r.status = st.value_or(Status::inconclusive);
      if (lower) detail::fill(r, true, a.hi.to_double(Rounding::up), b.log2.lo.to_double(Rounding::down));
      else detail::fill(r, false, a.lo.to_double(Rounding::down), b.log2.hi.to_double(Rounding::up));
      describe(extra);
      return r;
    }
  }
  r.status = Status::inconclusive;
  describe("precision ceiling");
  return r;
}

using RecordSink = std::function<void(const VerificationRecord&)>;

/// Runs the family's theorem over every generated instance; records go to
/// `sink` (if any) in generation order.
inline Summary verify(const InstanceFamily& fam, const VerifyOptions& opt, const RecordSink& sink = {}) {
  Summary sum;
  sum.family = fam.descriptor();
  sum.theorem = theorem_for(fam.problem);
  sum.precision_bits = opt.precision_bits;
  sum.normalization = normalization_note(fam);
  sum.timestamp = utc_timestamp();
  const bool detailed = static_cast<bool>(sink);
  const unsigned threads = std::max(1u, opt.threads);
  std::vector<BoundCache> caches(threads, BoundCache(opt.thm5_constant));

  std::vector<Instance> batch;
  std::vector<VerificationRecord> out;
  const std::size_t batch_size = threads == 1 ? 1 : 4096;

  auto account = [&](const Instance& x, VerificationRecord& r) {
    ++sum.counts[r.status];
    ++sum.total;
    if (r.status != Status::degenerate_skipped && !std::isnan(r.margin_log2) &&
        (std::isnan(sum.min_margin_log2) || r.margin_log2 < sum.min_margin_log2)) {
      if (r.instance_id.empty()) r = verify_instance(x, sum.family, opt, caches[0], true);
      sum.min_margin_log2 = r.margin_log2;
      sum.argmin_id = r.instance_id;
      sum.argmin_witness = r.witness;
    }
    if (sink) sink(r);
  };

  auto flush = [&]() {
    out.assign(batch.size(), VerificationRecord{});
    if (threads == 1 || batch.size() < 2) {
      for (std::size_t i = 0; i < batch.size(); ++i) out[i] = verify_instance(batch[i], sum.family, opt, caches[0], detailed);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&, t]() {
          for (std::size_t i = t; i < batch.size(); i += threads)
            out[i] = verify_instance(batch[i], sum.family, opt, caches[t], detailed);
        });
      for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < batch.size(); ++i) account(batch[i], out[i]);
    batch.clear();
  };

  Generator gen(fam);
  gen.run([&](Instance&& x) {
    batch.push_back(std::move(x));
    if (batch.size() >= batch_size) flush();
    return true;
  });
  flush();
  return sum;
}

}  // namespace condbound::harness

#endif  // CONDBOUND_HARNESS_VERIFY_HPP
