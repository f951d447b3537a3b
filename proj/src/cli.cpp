#include "frach/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"

#include "frach/closedform.hpp"
#include "frach/fracops.hpp"
#include "frach/grid.hpp"
#include "frach/specfun.hpp"
#include "frach/variational.hpp"
#include "frach/verify.hpp"

namespace frach {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("FRACH_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw DomainError(std::string("FRACH_SEED is not an unsigned integer: ") + env);
    }
  }
  return 42;
}

struct ProblemSpec {
  double a, h;
  int k;
  double alpha, A, B;
  int example;
};

ProblemSpec read_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("problem spec: ") + e.what());
  }
  static const std::set<std::string> keys = {"a", "h", "k", "alpha", "A", "B", "example"};
  if (!j.is_object()) throw FormatError("problem spec: expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!keys.contains(key)) throw FormatError("problem spec: unknown field '" + key + "'");
  }
  try {
    ProblemSpec p{j.at("a").get<double>(), j.at("h").get<double>(), j.at("k").get<int>(),
                  j.at("alpha").get<double>(), j.at("A").get<double>(), j.at("B").get<double>(),
                  j.at("example").get<int>()};
    if (!j.at("k").is_number_integer() || !j.at("example").is_number_integer()) {
      throw FormatError("problem spec: k and example must be integers");
    }
    if (p.example != 1 && p.example != 2) throw FormatError("problem spec: example must be 1 or 2");
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("problem spec: ") + e.what());
  }
}

int cmd_hfact(double x, double y, double h, std::ostream& out) {
  out << g17(h_factorial(x, y, h)) << '\n';
  return kExitOk;
}

int cmd_op(const std::string& kind, double order, const std::string& input, const std::string& output) {
  const GridFunction f = read_csv(input);
  GridFunction result = f;
  if (kind == "lfsum") {
    result = left_frac_sum(f, SumOrder(order));
  } else if (kind == "rfsum") {
    result = right_frac_sum(f, SumOrder(order));
  } else if (kind == "lfdiff") {
    result = left_frac_diff(f, DiffOrder(order));
  } else if (kind == "rfdiff") {
    result = right_frac_diff(f, DiffOrder(order));
  } else if (kind == "lfdiff-aligned") {
    result = left_frac_diff_aligned(f, DiffOrder(order));
  } else if (kind == "rfdiff-aligned") {
    result = right_frac_diff_aligned(f, DiffOrder(order));
  }
  write_csv(output, result);
  return kExitOk;
}

int cmd_solve(const std::string& spec_path, const std::string& out_path, bool oracle, std::ostream& out) {
  const ProblemSpec p = read_problem(spec_path);
  const HGrid grid(p.a, p.h, p.k);
  const DiffOrder alpha(p.alpha);
  const Solution sol = p.example == 1 ? solve_example1(grid, alpha, p.A, p.B)
                                      : solve_example2(grid, alpha, p.A, p.B);
  write_csv(out_path, sol.y);
  out << "constant=" << g17(sol.constant) << " objective=" << g17(sol.objective_value)
      << " el_residual_norm=" << g17(sol.el_residual_norm);
  if (oracle) {
    const auto problem = p.example == 1 ? example1_problem(grid, alpha, p.A, p.B)
                                        : example2_problem(grid, alpha, p.A, p.B);
    out << " oracle_gap=" << g17((brute_force_minimizer(problem) - sol.y).sup_norm());
  }
  out << '\n';
  return kExitOk;
}

int cmd_verify(const std::string& which, const VerifyOptions& opt, std::ostream& out) {
  const auto rows = run_verify(which, opt);
  bool ok = true;
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-4s %-10s %-48s %.3e <= %.0e\n", r.passed ? "PASS" : "FAIL",
                  r.suite.c_str(), r.config.c_str(), r.measured, r.tolerance);
    out << buf;
    ok = ok && r.passed;
  }
  out << (ok ? "all checks passed" : "verification FAILED") << '\n';
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_converge(double x, double y, double h_start, int halvings, std::ostream& out) {
  if (halvings < 1) throw DomainError("converge: halvings must be >= 1");
  if (!(h_start > 0.0)) throw DomainError("converge: h-start must be positive");
  out << "h,value,abs_error,ratio\n";
  double previous = std::nan("");
  for (int i = 0; i <= halvings; ++i) {
    const double h = std::ldexp(h_start, -i);
    const double value = h_factorial(x, y, h);
    const double err = h_factorial_limit_error(x, y, h);
    const double ratio = (i == 0 || err == 0.0) ? std::nan("") : previous / err;
    out << g17(h) << ',' << g17(value) << ',' << g17(err) << ',' << g17(ratio) << '\n';
    previous = err;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"frach: fractional h-difference calculus toolkit", "frach"};
  app.require_subcommand(1);
  // `-h` stays free for the step flag; subcommands inherit this help flag.
  app.set_help_flag("--help", "Print this help message and exit");

  double x = 0, y = 0, h = 0;
  auto* hfact = app.add_subcommand("hfact", "Evaluate the h-factorial x_h^(y)");
  hfact->add_option("--x", x, "base")->required();
  hfact->add_option("--y", y, "exponent")->required();
  hfact->add_option("--h", h, "step (> 0)")->required();

  std::string kind, input, output;
  double order = 0;
  auto* op = app.add_subcommand("op", "Apply a fractional operator to a CSV grid function");
  op->add_option("--kind", kind, "operator")
      ->required()
      ->check(CLI::IsMember({"lfsum", "rfsum", "lfdiff", "rfdiff", "lfdiff-aligned", "rfdiff-aligned"}));
  op->add_option("--order", order, "order: nu >= 0 for sums, 0 < alpha <= 1 for differences")->required();
  op->add_option("--input", input, "input CSV (t,value)")->required();
  op->add_option("--output", output, "output CSV")->required();

  std::string spec_path, out_path;
  bool with_oracle = false;
  auto* solve = app.add_subcommand("solve", "Solve one of the two variational examples");
  solve->add_option("--spec", spec_path, "problem JSON {a,h,k,alpha,A,B,example}")->required();
  solve->add_option("--out", out_path, "minimizer CSV")->required();
  solve->add_flag("--oracle", with_oracle, "also report the gap to the brute-force minimizer");

  std::string which = "all";
  int trials = 10;
  std::uint64_t seed = 0;
  std::vector<std::string> corrupt;
  auto* verify = app.add_subcommand("verify", "Run identity and solver verification sweeps");
  verify->add_option("--which", which, "suite")
      ->check(CLI::IsMember({"exponents", "parts", "kernel", "transfer", "examples", "all"}));
  verify->add_option("--trials", trials, "random trials per configuration")->check(CLI::PositiveNumber);
  auto* seed_opt = verify->add_option("--seed", seed, "RNG seed (default 42, env FRACH_SEED)");
  auto* corrupt_opt = verify->add_option(
      "--corrupt", corrupt, "negative control: kernel | parts | examples (default: the selected suite)");
  corrupt_opt->expected(0, 1);

  double cx = 0, cy = 0, h_start = 0;
  int halvings = 0;
  auto* converge = app.add_subcommand("converge", "Tabulate x_h^(y) - x^y as h is halved");
  converge->add_option("--x", cx, "base (>= 0)")->required();
  converge->add_option("--y", cy, "exponent")->required();
  converge->add_option("--h-start", h_start, "initial step")->required();
  converge->add_option("--halvings", halvings, "number of halvings (>= 1)")->required();

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("frach");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*hfact) return cmd_hfact(x, y, h, out);
    if (*op) return cmd_op(kind, order, input, output);
    if (*solve) return cmd_solve(spec_path, out_path, with_oracle, out);
    if (*converge) return cmd_converge(cx, cy, h_start, halvings, out);
    if (*verify) {
      VerifyOptions opt;
      opt.trials = trials;
      opt.seed = seed_opt->count() > 0 ? seed : default_seed();
      if (corrupt_opt->count() > 0) {
        const std::string name = (corrupt.empty() || corrupt.front().empty()) ? (which == "all" ? "kernel" : which) : corrupt.front();
        opt.fault = parse_fault(name);
      }
      return cmd_verify(which, opt, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace frach
