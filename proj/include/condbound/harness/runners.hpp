#ifndef CONDBOUND_HARNESS_RUNNERS_HPP
#define CONDBOUND_HARNESS_RUNNERS_HPP

// End-to-end Graeffe and QR runs compared against their predictions.

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "condbound/graeffe.hpp"
#include "condbound/qr.hpp"

namespace condbound::harness {

/// Exact rational value of a positive double tolerance in (0, 1).
inline BigRational tolerance_from_double(double t, const char* what) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError(std::string(what) + " must lie in (0, 1)");
  BigRational q;
  mpq_set_d(q.get_mpq_t(), t);
  return q;
}

struct GraeffeRun {
  IntPolynomial f;
  BigRational delta;
  IterationPrediction predicted;
  IterationPrediction apriori;
  RecoveryResult recovered;
  std::vector<ExtReal> oracle;  // certified roots, descending
  std::vector<double> rel_errors;
  double max_rel_error = 0.0;
  bool within_target = false;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["poly"] = f.str();
    j["target_rel_err"] = delta.get_d();
    j["k"] = predicted.k;
    j["k1"] = predicted.k1;
    j["k2"] = predicted.k2;
    j["k_apriori"] = apriori.k;
    j["k_used"] = recovered.k_used;
    auto& roots = j["roots"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < recovered.roots.size(); ++i) {
      nlohmann::ordered_json r;
      r["recovered"] = recovered.roots[i].str(20);
      r["oracle"] = oracle[i].str(20);
      r["rel_error"] = rel_errors[i];
      r["log2_claimed_error"] = recovered.log2_claimed_error[i].to_double(Rounding::up);
      roots.push_back(r);
    }
    j["max_rel_error"] = max_rel_error;
    j["within_target"] = within_target;
    j["claim"] = recovered.claim;
    return j;
  }
};

/// Refuses unless f is monic with distinct, certified real positive roots.
inline GraeffeRun run_graeffe(const IntPolynomial& f, const BigRational& delta, long prec = kDefaultPrecision) {
  if (f.degree() < 1) throw DomainError("graeffe: polynomial must have degree >= 1");
  if (f.leading() != 1) throw DomainError("graeffe: polynomial must be monic (leading coefficient " +
                                          f.leading().get_str() + ")");
  if (!is_squarefree(f)) throw DomainError("graeffe: roots must be distinct (f has a repeated root)");
  ComplexList roots = poly_roots(f, prec);
  for (const auto& r : roots) {
    if (abs(r.value.im) > r.radius)
      throw DomainError("graeffe: root " + to_string(r.value, 12) + " is not real; distinct positive real roots required");
    if (r.real_interval().lo.sign() <= 0)
      throw DomainError("graeffe: root " + to_string(r.value, 12) + " is not positive; distinct positive real roots required");
  }
  GraeffeRun run;
  run.f = f;
  run.delta = delta;
  run.predicted = predict_iterations(f, delta, prec);
  run.apriori = predict_iterations_apriori(static_cast<unsigned long>(f.degree()), f.max_abs_coeff(), delta, prec);
  run.recovered = recover_roots(iterate(f, run.predicted.k), prec);
  for (const auto& r : roots) run.oracle.push_back(r.value.re);
  std::sort(run.oracle.begin(), run.oracle.end(), [](const ExtReal& a, const ExtReal& b) { return a > b; });
  run.within_target = true;
  const ExtReal target = ExtReal::from_rational(delta, prec);
  for (std::size_t i = 0; i < run.oracle.size(); ++i) {
    ExtReal rel = abs(run.recovered.roots[i] - run.oracle[i]) / run.oracle[i];
    run.rel_errors.push_back(rel.to_double(Rounding::up));
    run.max_rel_error = std::max(run.max_rel_error, run.rel_errors.back());
    if (rel > target) run.within_target = false;
  }
  return run;
}

/// "2,1;1,2" rows separated by ';'. Anything else is read as a matrix file.
inline IntMatrix parse_matrix_arg(const std::string& arg) {
  if (arg.find_first_of(",;") != std::string::npos) {
    std::vector<std::vector<BigInt>> rows;
    std::stringstream rs(arg);
    std::string row;
    while (std::getline(rs, row, ';')) {
      std::vector<BigInt> r;
      std::stringstream cs(row);
      std::string cell;
      while (std::getline(cs, cell, ',')) {
        cell.erase(0, cell.find_first_not_of(" \t"));
        cell.erase(cell.find_last_not_of(" \t") + 1);
        BigInt v;
        if (cell.empty() || v.set_str(cell, 10) != 0) throw DomainError("matrix: bad entry '" + cell + "'");
        r.push_back(v);
      }
      if (!rows.empty() && r.size() != rows[0].size()) throw DimensionError("matrix: ragged rows");
      rows.push_back(std::move(r));
    }
    if (rows.empty()) throw DomainError("matrix: empty");
    std::vector<BigInt> flat;
    for (auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    return IntMatrix(rows.size(), rows[0].size(), flat);
  }
  std::ifstream in(arg);
  if (!in) throw DomainError("matrix: cannot open '" + arg + "'");
  return read_matrix(in);
}

struct QRRun {
  IntMatrix a;
  BigRational delta1;
  QRTrace trace;
  QRPrediction predicted;
  QRPrediction apriori;
  std::vector<ExtReal> eigen_estimates;  // descending diagonal of the final iterate
  std::vector<ExtReal> oracle;           // certified eigenvalues, descending
  double oracle_rate = 0.0;              // max λ_{i+1}/λ_i
  double max_eigen_rel_error = 0.0;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["matrix"] = to_string(a);
    j["tol"] = delta1.get_d();
    j["iterations"] = trace.iterations;
    j["converged"] = trace.converged;
    j["predicted"] = predicted.iterations.get_str();
    if (predicted.delta0) j["relgap"] = predicted.delta0->get_d();
    j["predicted_apriori"] = apriori.iterations.get_str();
    j["within_prediction"] = BigInt(trace.iterations) <= predicted.iterations;
    j["rate"] = trace.asymptotic_rate();
    j["oracle_rate"] = oracle_rate;
    auto& ev = j["eigenvalues"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < oracle.size(); ++i)
      ev.push_back({{"estimate", eigen_estimates[i].str(20)}, {"oracle", oracle[i].str(20)}});
    j["max_eigen_rel_error"] = max_eigen_rel_error;
    return j;
  }
};

inline QRRun run_qr(const IntMatrix& a, const BigRational& delta1, long prec = kDefaultPrecision) {
  if (!a.square()) throw DimensionError("qr: matrix is not square");
  if (!a.symmetric()) throw DomainError("qr: matrix is not symmetric");
  if (!is_positive_definite(a)) throw DomainError("qr: matrix is not positive definite");
  QRRun run;
  run.a = a;
  run.delta1 = delta1;
  run.predicted = predict_qr_iterations(a, delta1, prec);
  run.apriori = predict_qr_iterations_apriori(a.rows(), max_abs_entry(a), delta1, prec);
  BigInt cap = run.predicted.iterations * 4 + 1000;
  run.trace = qr_iterate(a, delta1, cap.fits_ulong_p() ? cap.get_ui() : 1000000UL, prec);
  for (std::size_t i = 0; i < a.rows(); ++i) run.eigen_estimates.push_back(run.trace.final_matrix[i][i]);
  std::sort(run.eigen_estimates.begin(), run.eigen_estimates.end(),
            [](const ExtReal& x, const ExtReal& y) { return x > y; });
  for (const auto& l : sym_eigenvalues(a, prec)) run.oracle.push_back(l.value.re);
  for (std::size_t i = 0; i < run.oracle.size(); ++i) {
    if (i + 1 < run.oracle.size())
      run.oracle_rate = std::max(run.oracle_rate, (run.oracle[i + 1] / run.oracle[i]).to_double());
    run.max_eigen_rel_error =
        std::max(run.max_eigen_rel_error, (abs(run.eigen_estimates[i] - run.oracle[i]) / run.oracle[i]).to_double());
  }
  return run;
}

}  // namespace condbound::harness

#endif  // CONDBOUND_HARNESS_RUNNERS_HPP
