// Acceptance checks. Prints one PASS/FAIL line per criterion.
// Usage: acceptance [--criterion N]

#include <bit>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "condbound/harness.hpp"

using namespace condbound;
using namespace condbound::harness;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string counts(const Summary& s) {
  std::ostringstream os;
  os << s.family << ": ok=" << s.count(Status::ok) << " violation=" << s.count(Status::violation)
     << " degenerate=" << s.count(Status::degenerate_skipped) << " inconclusive=" << s.count(Status::inconclusive)
     << " min_margin_log2=" << s.min_margin_log2;
  if (s.count(Status::violation)) os << " argmin=" << s.argmin_witness;
  return os.str();
}

BigInt ceil_rational(const BigRational& q) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

bool clean(const Summary& s) { return s.count(Status::violation) == 0 && s.count(Status::inconclusive) == 0; }

Summary run(const InstanceFamily& fam, const VerifyOptions& opt = {}) {
  return verify(fam, opt, [](const VerificationRecord&) {});
}

InstanceFamily exhaustive(Problem p, unsigned long n, unsigned long d, long range) {
  InstanceFamily f;
  f.problem = p;
  f.mode = Mode::exhaustive;
  f.n = n;
  f.d = d;
  f.coeff_max = range;
  return f;
}

// Families behind criteria 1 to 5, shared with criterion 10.

std::vector<InstanceFamily> families_1() {
  return {exhaustive(Problem::linsys, 2, 0, 2), exhaustive(Problem::linsys, 3, 0, 2)};
}

std::vector<InstanceFamily> families_2() {
  std::vector<std::pair<unsigned long, unsigned long>> shapes;
  for (unsigned long n = 1; n <= 3; ++n)
    for (unsigned long m = n; m <= 4; ++m) shapes.push_back({m, n});
  std::vector<InstanceFamily> out;
  const std::uint64_t total = 100000;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    InstanceFamily f;
    f.problem = Problem::lsq;
    f.mode = Mode::random;
    f.m = shapes[i].first;
    f.n = shapes[i].second;
    f.coeff_max = 3;
    f.seed = 20240 + i;
    f.count = total / shapes.size() + (i < total % shapes.size() ? 1 : 0);
    out.push_back(f);
  }
  return out;
}

std::vector<InstanceFamily> families_3() { return {exhaustive(Problem::nse, 2, 0, 2)}; }

std::vector<InstanceFamily> families_4() {
  std::vector<InstanceFamily> out;
  for (unsigned long d = 1; d <= 4; ++d) out.push_back(exhaustive(Problem::unipoly, 1, d, 2));
  return out;
}

std::vector<InstanceFamily> families_5() {
  std::vector<InstanceFamily> out;
  for (unsigned long n = 2; n <= 3; ++n) {
    InstanceFamily f = exhaustive(Problem::relgap_mat, n, 0, 3);
    f.coeff_min = 1;
    f.spd_only = true;
    out.push_back(f);
  }
  for (unsigned long d = 1; d <= 4; ++d) out.push_back(exhaustive(Problem::relgap_poly, 1, d, 2));
  return out;
}

Outcome check_families(const std::vector<InstanceFamily>& fams) {
  Outcome o{true, ""};
  for (const auto& f : fams) {
    Summary s = run(f);
    o.pass = o.pass && clean(s);
    o.detail += (o.detail.empty() ? "" : "; ") + counts(s);
  }
  return o;
}

Outcome criterion_1() {
  auto fams = families_1();
  Summary s2 = run(fams[0]);
  auto t0 = std::chrono::steady_clock::now();
  Summary s3 = run(fams[1]);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream os;
  os << counts(s2) << "; " << counts(s3) << "; 3x3 runtime " << secs << " s (target < 60 s)";
  return {clean(s2) && clean(s3) && secs < 60.0, os.str()};
}

Outcome criterion_2() {
  Outcome o = check_families(families_2());
  std::uint64_t n = 0;
  for (const auto& f : families_2()) n += *f.count;
  o.pass = o.pass && n == 100000;
  return o;
}

Outcome criterion_3() { return check_families(families_3()); }
Outcome criterion_4() { return check_families(families_4()); }
Outcome criterion_5() { return check_families(families_5()); }

Outcome criterion_6() {
  const std::vector<std::pair<BigRational, const char*>> deltas = {
      {BigRational(1, 64), "2^-6"}, {BigRational(1, 1024), "2^-10"}, {BigRational(1, 1 << 20), "2^-20"}};
  std::size_t runs = 0, failures = 0;
  double worst = 0.0;
  std::string first_failure;
  for (unsigned mask = 1; mask < 32; ++mask) {
    if (std::popcount(mask) > 4) continue;
    std::vector<BigInt> roots;
    for (int r = 1; r <= 5; ++r)
      if (mask & (1u << (r - 1))) roots.push_back(BigInt(r));
    IntPolynomial f = IntPolynomial::from_roots(roots);
    for (const auto& [delta, name] : deltas) {
      GraeffeRun g = run_graeffe(f, delta);
      ++runs;
      worst = std::max(worst, g.max_rel_error / delta.get_d());
      if (!g.within_target) {
        ++failures;
        if (first_failure.empty()) first_failure = f.str() + " delta=" + name;
      }
    }
  }
  IntPolynomial q = IntPolynomial::parse("1,-3,2");
  RecoveryResult r = recover_roots(iterate(q, 3));
  ExtReal z1 = r.roots.at(0);
  bool hand = z1 >= ExtReal::from_rational(BigRational(2), kDefaultPrecision) &&
              z1 <= ExtReal::from_rational(BigRational(2001, 1000), kDefaultPrecision);
  std::ostringstream os;
  os << runs << " runs, " << failures << " outside delta";
  if (!first_failure.empty()) os << " (first: " << first_failure << ")";
  os << ", worst rel_err/delta " << worst << "; x^2-3x+2 at k=3 gives zeta1 = " << z1.str(12);
  return {failures == 0 && runs == 30 * 3 && hand, os.str()};
}

Outcome criterion_7() {
  const BigRational delta1(1, 1 << 20);
  std::size_t matrices = 0, rate_checked = 0, rate_bad = 0, iter_bad = 0, diagonal = 0;
  double worst_rate_dev = 0.0;
  std::string first_bad;
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b)
      for (int c = 1; c <= 4; ++c) {
        IntMatrix m(2, 2, {BigInt(a), BigInt(b), BigInt(b), BigInt(c)});
        if (!is_positive_definite(m)) continue;
        // distinct eigenvalues unless the discriminant vanishes
        if ((a - c) * (a - c) + 4 * b * b == 0) continue;
        ++matrices;
        QRRun q = run_qr(m, delta1);
        ConditionValue gap = relgap_matrix(m);
        BigInt limit = gap.exact ? ceil_rational(BigRational(20) / *gap.exact)
                                 : div(ExtReal::from_int(BigInt(20), kDefaultPrecision), gap.value.hi, Rounding::down).ceil_int();
        if (!q.trace.converged || BigInt(q.trace.iterations) > limit) {
          ++iter_bad;
          if (first_bad.empty()) first_bad = to_string(m) + " iterations " + std::to_string(q.trace.iterations);
        }
        if (q.trace.iterations == 0) {
          ++diagonal;
          continue;
        }
        ++rate_checked;
        double dev = std::abs(q.trace.asymptotic_rate() - q.oracle_rate) / q.oracle_rate;
        worst_rate_dev = std::max(worst_rate_dev, dev);
        if (dev > 0.1) {
          ++rate_bad;
          if (first_bad.empty()) first_bad = to_string(m) + " rate " + std::to_string(q.trace.asymptotic_rate());
        }
      }
  std::ostringstream os;
  os << matrices << " matrices (" << diagonal << " already diagonal, no rate to measure), rate off by > 10%: "
     << rate_bad << "/" << rate_checked << " (worst " << worst_rate_dev << "), over iteration limit: " << iter_bad;
  if (!first_bad.empty()) os << " (first: " << first_bad << ")";
  return {rate_bad == 0 && iter_bad == 0 && matrices > 0, os.str()};
}

Outcome criterion_8() {
  HeightSamples samples;
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> len(1, 4), num(-60, 60), den(1, 60);
  for (int i = 0; i < 10000; ++i) {
    RatVector v;
    const int k = len(rng);
    for (int j = 0; j < k; ++j) {
      BigRational x(num(rng), den(rng));
      x.canonicalize();
      v.push_back(x);
    }
    samples.vectors.push_back(std::move(v));
  }
  for (const auto& fam : families_4())
    Generator(fam).run([&](Instance&& x) {
      if (!degeneracy(x)) samples.polys.push_back(std::move(x.f));
      return true;
    });
  try {
    HeightReport r = check_height_propositions(samples);
    std::ostringstream os;
    os << r.coordinate_checks << " vectors, " << r.square_checks << " square checks, " << r.sum_product_checks
       << " sum/product checks, " << r.root_checks << " root-modulus checks on squarefree d<=4 |coef|<=2";
    return {r.coordinate_checks == 10000 && r.root_checks == samples.polys.size(), os.str()};
  } catch (const VerificationFailure& e) {
    return {false, std::string("violation: ") + e.what()};
  }
}

std::vector<ExtComplex> as_complex(const std::vector<BigInt>& v, long scale) {
  std::vector<ExtComplex> z;
  for (const auto& c : v)
    z.emplace_back(ExtReal::from_int(c * scale, kDefaultPrecision), ExtReal(kDefaultPrecision));
  return z;
}

Outcome criterion_9() {
  std::size_t systems = 0, bad = 0;
  double worst = 0.0;
  std::string first_bad;
  const ExtReal tol = ExtReal::from_rational(BigRational(1, 1 << 30), kDefaultPrecision);
  int k = 0;
  for (unsigned long n = 1; n <= 2; ++n)
    for (unsigned long d = 1; d <= 3; ++d, ++k) {
      InstanceFamily fam;
      fam.problem = Problem::system;
      fam.mode = Mode::random;
      fam.n = n;
      fam.d = d;
      fam.coeff_max = 3;
      fam.seed = 900 + k;
      fam.count = k < 4 ? 17 : 16;
      Generator(fam).run([&](Instance&& x) {
        ++systems;
        HomogeneousSystem f3 = x.system;
        for (auto& p : f3.polys)
          for (auto& t : p.terms) t.coeff *= 3;
        ExtReal mu = mu_system(x.system, as_complex(x.zeta, 1)).raw_value;
        for (ExtReal other : {mu_system(x.system, as_complex(x.zeta, 2)).raw_value,
                              mu_system(f3, as_complex(x.zeta, 1)).raw_value}) {
          ExtReal rel = abs(other - mu) / mu;
          worst = std::max(worst, rel.to_double(Rounding::up));
          if (rel > tol) {
            ++bad;
            if (first_bad.empty()) first_bad = x.text();
          }
        }
        return true;
      });
    }
  std::size_t matrices = 0, lemma_bad = 0;
  std::string lemma_witness;
  for (const auto& fam : families_1())
    Generator(fam).run([&](Instance&& x) {
      if (max_abs_entry(x.a) == 0) return true;
      ++matrices;
      Lemma1Check c = check_lemma1(x.a);
      if (!c.holds && lemma_bad++ == 0) lemma_witness = to_string(x.a);
      return true;
    });
  std::ostringstream os;
  os << systems << " systems, " << bad << " invariance failures (worst rel " << worst << ")";
  if (!first_bad.empty()) os << " first: " << first_bad;
  os << "; char-poly bound on " << matrices << " nonzero matrices, " << lemma_bad << " failures";
  if (!lemma_witness.empty()) os << " first: " << lemma_witness;
  return {systems == 100 && bad == 0 && lemma_bad == 0, os.str()};
}

std::string without_timestamp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  std::string line;
  while (std::getline(in, line)) {
    auto j = nlohmann::ordered_json::parse(line);
    j.erase("timestamp");
    os << j.dump() << '\n';
  }
  return os.str();
}

Outcome criterion_10() {
  std::ostringstream os;
  bool pass = true;

  // Determinism: seeded random and adversarial runs written twice.
  const auto dir = std::filesystem::temp_directory_path();
  const std::string p1 = (dir / "condbound_acc_a.jsonl").string(), p2 = (dir / "condbound_acc_b.jsonl").string();
  std::vector<InstanceFamily> seeded = families_2();
  for (auto p : {Problem::linsys, Problem::lsq, Problem::nse, Problem::unipoly, Problem::relgap_mat, Problem::relgap_poly,
                 Problem::system}) {
    InstanceFamily f;
    f.problem = p;
    f.mode = p == Problem::system ? Mode::random : Mode::adversarial;
    f.n = 2;
    f.m = p == Problem::lsq ? 3 : 0;
    f.d = 3;
    f.coeff_max = 3;
    f.seed = 1010;
    f.count = 200;
    seeded.push_back(f);
  }
  std::size_t identical = 0;
  for (const auto& f : seeded) {
    emit_report(f, {}, p1, Format::jsonl);
    emit_report(f, {}, p2, Format::jsonl);
    if (without_timestamp(p1) == without_timestamp(p2) && !without_timestamp(p1).empty()) ++identical;
  }
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
  pass = pass && identical == seeded.size();
  os << "byte-identical reports " << identical << "/" << seeded.size();

  // Precision doubling with the double kernel off.
  std::vector<InstanceFamily> all;
  for (auto fams : {families_1(), families_2(), families_3(), families_4(), families_5()})
    all.insert(all.end(), fams.begin(), fams.end());
  std::uint64_t compared = 0, changed = 0;
  std::string first_change;
  for (const auto& f : all) {
    VerifyOptions lo, hi;
    lo.fast_path = hi.fast_path = false;
    lo.precision_bits = 256;
    hi.precision_bits = 512;
    std::vector<Status> a;
    std::vector<std::string> ids;
    verify(f, lo, [&](const VerificationRecord& r) {
      a.push_back(r.status);
      ids.push_back(r.instance_id);
    });
    std::size_t i = 0;
    verify(f, hi, [&](const VerificationRecord& r) {
      ++compared;
      if (i >= a.size() || ids[i] != r.instance_id || a[i] != r.status) {
        if (changed++ == 0) first_change = f.descriptor() + " " + r.instance_id;
      }
      ++i;
    });
    if (i != a.size()) {
      if (changed++ == 0) first_change = f.descriptor() + " record count differs";
    }
  }
  pass = pass && changed == 0;
  os << "; 256 vs 512 bits over " << all.size() << " families: " << compared << " records, " << changed
     << " status changes";
  if (!first_change.empty()) os << " (first: " << first_change << ")";
  return {pass, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  if (only < 0 || only > 10) {
    std::cerr << "acceptance: criterion must be 1..10\n";
    return 2;
  }
  Outcome (*checks[])() = {criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                           criterion_6, criterion_7, criterion_8, criterion_9, criterion_10};
  bool all = true;
  for (int c = 1; c <= 10; ++c) {
    if (only && c != only) continue;
    Outcome o;
    try {
      o = checks[c - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::cout << "criterion " << c << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
