#include <iostream>

#include "CLI11.hpp"

#include "condbound/harness.hpp"

using namespace condbound;
using namespace condbound::harness;

namespace {

constexpr int kExitUsage = 2;

struct VerifyArgs {
  std::string problem;
  int theorem = 0;
  std::string mode = "exhaustive";
  unsigned long n = 2, m = 0, d = 2;
  long coeff_range = 1;
  std::optional<long> entries_min;
  bool spd = false;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> count;
  std::string out = "-";
  std::string format = "jsonl";
  long precision_bits = kDefaultPrecision;
  std::string input;
  unsigned threads = 1;
  bool no_fast = false;
  unsigned long thm5_constant = kDefaultThm5Constant;
};

int run_verify(const VerifyArgs& v) {
  if (v.problem.empty() && v.theorem == 0) throw DomainError("verify: give --problem or --theorem");
  InstanceFamily fam;
  fam.problem = v.problem.empty() ? problem_for(v.theorem) : parse_problem(v.problem);
  if (v.theorem != 0 && theorem_for(fam.problem) != v.theorem)
    throw DomainError("verify: problem '" + v.problem + "' is checked against theorem " +
                      std::to_string(theorem_for(fam.problem)) + ", not " + std::to_string(v.theorem));
  fam.mode = parse_mode(v.mode);
  fam.n = v.n;
  fam.m = v.m;
  fam.d = v.d;
  fam.coeff_max = v.coeff_range;
  fam.coeff_min = v.entries_min;
  fam.spd_only = v.spd;
  fam.seed = v.seed;
  fam.count = v.count;
  fam.input = v.input;
  if (fam.mode == Mode::file && fam.input.empty()) throw DomainError("verify: file mode needs --input");
  if (v.precision_bits < kMinPrecision) throw DomainError("verify: --precision-bits below " + std::to_string(kMinPrecision));
  VerifyOptions opt;
  opt.precision_bits = v.precision_bits;
  opt.fast_path = !v.no_fast;
  opt.threads = v.threads;
  opt.thm5_constant = v.thm5_constant;
  Summary s = emit_report(fam, opt, v.out, parse_format(v.format));
  if (v.out != "-") std::cerr << to_json(s).dump() << '\n';
  return s.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify condition-number height bounds on integer instances"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "run a theorem over an instance family");
  verify_cmd->add_option("--problem", va.problem, "linsys|lsq|nse|unipoly|system|relgap_mat|relgap_poly");
  verify_cmd->add_option("--theorem", va.theorem, "theorem 1..7")->check(CLI::Range(1, 7));
  verify_cmd->add_option("--mode", va.mode, "exhaustive|random|adversarial|file")->capture_default_str();
  verify_cmd->add_option("--n", va.n, "columns / matrix size / variables")->capture_default_str();
  verify_cmd->add_option("--m", va.m, "rows for least squares (default n)");
  verify_cmd->add_option("--d", va.d, "polynomial degree (max degree for systems)")->capture_default_str();
  verify_cmd->add_option("--coeff-range", va.coeff_range, "max |entry|")->capture_default_str();
  verify_cmd->add_option("--entries-min", va.entries_min, "smallest entry (default -coeff-range)");
  verify_cmd->add_flag("--spd", va.spd, "relgap_mat: positive definite matrices only");
  verify_cmd->add_option("--seed", va.seed)->capture_default_str();
  verify_cmd->add_option("--count", va.count, "instance cap");
  verify_cmd->add_option("--out", va.out, "report path, - for stdout")->capture_default_str();
  verify_cmd->add_option("--format", va.format, "jsonl|csv")->capture_default_str();
  verify_cmd->add_option("--precision-bits", va.precision_bits)->capture_default_str();
  verify_cmd->add_option("--input", va.input, "instance file for --mode file");
  verify_cmd->add_option("--threads", va.threads)->capture_default_str()->check(CLI::Range(1u, 256u));
  verify_cmd->add_flag("--no-fast", va.no_fast, "disable the double-precision kernel");
  verify_cmd->add_option("--thm5-constant", va.thm5_constant)->capture_default_str();

  std::string poly;
  double target = 1.0 / 1024.0;
  auto* graeffe_cmd = app.add_subcommand("graeffe", "predict, run and check Graeffe root recovery");
  graeffe_cmd->add_option("--poly", poly, "c_d,...,c_0")->required();
  graeffe_cmd->add_option("--target-rel-err", target)->capture_default_str();

  std::string matrix;
  double tol = 1.0 / (1 << 20);
  auto* qr_cmd = app.add_subcommand("qr", "run unshifted QR against its iteration prediction");
  qr_cmd->add_option("--matrix", matrix, "matrix file or inline rows like 2,1;1,2")->required();
  qr_cmd->add_option("--tol", tol)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*verify_cmd) return run_verify(va);
    if (*graeffe_cmd) {
      GraeffeRun r = run_graeffe(IntPolynomial::parse(poly), tolerance_from_double(target, "--target-rel-err"));
      std::cout << r.to_json().dump(2) << '\n';
      return r.within_target ? 0 : 1;
    }
    if (*qr_cmd) {
      QRRun r = run_qr(parse_matrix_arg(matrix), tolerance_from_double(tol, "--tol"));
      std::cout << r.to_json().dump(2) << '\n';
      return r.trace.converged ? 0 : 1;
    }
  } catch (const DomainError& e) {
    std::cerr << "condbound: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DimensionError& e) {
    std::cerr << "condbound: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetError& e) {
    std::cerr << "condbound: " << e.what() << " (required " << e.required() << ")\n";
    return kExitUsage;
  } catch (const ReportError& e) {
    std::cerr << "condbound: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PrecisionError& e) {
    std::cerr << "condbound: " << e.what() << '\n';
    return 3;
  }
  return kExitUsage;
}
