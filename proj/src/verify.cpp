#include "frach/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <random>

#include "frach/closedform.hpp"
#include "frach/specfun.hpp"
#include "frach/variational.hpp"

namespace frach {

namespace {

constexpr double kIdentityTol = 1e-10;
constexpr double kPartsTol = 1e-9;
constexpr double kKernelTol = 1e-10;
constexpr double kUniquenessTol = 1e-8;
constexpr double kConstantRhsTol = 1e-9;
constexpr double kElTol = 1e-8;
constexpr double kBoundaryTol = 1e-12;
constexpr double kOracleTol = 1e-6;
constexpr double kMinimalityTol = 1e-10;
constexpr double kStraightLineTol = 1e-10;

constexpr double kSumOrders[] = {0.0, 0.25, 0.5, 1.0, 1.5};
constexpr double kTransferOrders[] = {0.0, 0.3, 0.7, 1.0, 2.0};
constexpr double kSteps[] = {0.25, 1.0, 2.0};
constexpr double kPartsAlphas[] = {0.1, 0.4, 0.7, 1.0};
constexpr double kKernelAlphas[] = {0.1, 0.3, 0.5, 0.7, 0.9, 1.0};
constexpr double kExampleAlphas[] = {0.25, 0.5, 0.75, 1.0};
constexpr double kExampleSteps[] = {0.5, 1.0};
constexpr int kExampleKs[] = {2, 3, 4, 8};
constexpr double kBoundaryPairs[][2] = {{0.0, 1.0}, {1.0, 0.0}, {2.0, -3.0}};
constexpr int kMaxK = 16;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string label(const char* fmt, double x, double y = 0.0, double z = 0.0) {
  char buf[96];
  std::snprintf(buf, sizeof buf, fmt, x, y, z);
  return buf;
}

CheckRow row(std::string suite, std::string config, double measured, double tol) {
  return {std::move(suite), std::move(config), measured, tol, measured <= tol};
}

// Evaluates independent row builders concurrently; output keeps sweep order.
std::vector<CheckRow> run_rows(std::vector<std::function<CheckRow()>> jobs) {
  std::vector<std::future<CheckRow>> futures;
  futures.reserve(jobs.size());
  for (auto& job : jobs) futures.push_back(std::async(std::launch::async, std::move(job)));
  std::vector<CheckRow> rows;
  rows.reserve(futures.size());
  for (auto& f : futures) rows.push_back(f.get());
  return rows;
}

GridFunction corrupt(const GridFunction& f, std::size_t index) {
  std::vector<double> v(f.values().begin(), f.values().end());
  v[index] += 1e-6 * std::max(1.0, f.sup_norm());
  return {f.origin(), f.h(), std::move(v)};
}

}  // namespace

Fault parse_fault(std::string_view name) {
  if (name == "none") return Fault::none;
  if (name == "kernel") return Fault::kernel;
  if (name == "parts") return Fault::parts;
  if (name == "examples") return Fault::examples;
  throw DomainError("unknown fault '" + std::string(name) + "'");
}

GridFunction random_grid_function(double origin, double h, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return {origin, h, std::move(v)};
}

GridFunction right_kernel_by_linear_solve(const HGrid& grid, DiffOrder alpha, double f_b) {
  const std::size_t k = static_cast<std::size_t>(grid.k());
  const auto apply = [&](std::vector<double> values) {
    return right_frac_diff(GridFunction(grid.a(), grid.h(), std::move(values)), alpha);
  };
  // right_frac_diff(f) = M f(a..b-h) + f(b) r; k equations, k unknowns.
  std::vector<double> unit(k + 1, 0.0);
  unit[k] = f_b;
  const GridFunction r = apply(unit);
  DenseMatrix m(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> e(k + 1, 0.0);
    e[i] = 1.0;
    const GridFunction col = apply(e);
    for (std::size_t row = 0; row < k; ++row) m(row, i) = col[row];
  }
  std::vector<double> rhs(k);
  for (std::size_t row = 0; row < k; ++row) rhs[row] = -r[row];
  auto x = solve_linear_system(std::move(m), std::move(rhs));
  x.push_back(f_b);
  return {grid.a(), grid.h(), std::move(x)};
}

std::vector<CheckRow> verify_exponents(const VerifyOptions& opt) {
  std::vector<std::function<CheckRow()>> jobs;
  std::uint64_t stream = 0;
  for (Side side : {Side::left, Side::right}) {
    for (double mu : kSumOrders) {
      for (double nu : kSumOrders) {
        const std::uint64_t s = mix_seed(opt.seed, stream++);
        jobs.emplace_back([=] {
          double worst = 0.0;
          std::uint64_t draw = s;
          for (double h : kSteps) {
            for (int k = 2; k <= kMaxK; ++k) {
              for (int trial = 0; trial < opt.trials; ++trial) {
                const auto f = random_grid_function(0.0, h, static_cast<std::size_t>(k) + 1, draw++);
                worst = std::max(worst, exponent_law_residual(f, SumOrder(mu), SumOrder(nu), side).relative());
              }
            }
          }
          return row("exponents",
                     label(side == Side::left ? "left  mu=%.2f nu=%.2f" : "right mu=%.2f nu=%.2f", mu, nu),
                     worst, kIdentityTol);
        });
      }
    }
  }
  return run_rows(std::move(jobs));
}

std::vector<CheckRow> verify_transfer(const VerifyOptions& opt) {
  std::vector<std::function<CheckRow()>> jobs;
  std::uint64_t stream = 100;
  for (double nu : kTransferOrders) {
    const std::uint64_t s = mix_seed(opt.seed, stream++);
    jobs.emplace_back([=] {
      double worst = 0.0;
      std::uint64_t draw = s;
      for (double h : kSteps) {
        for (int k = 2; k <= kMaxK; ++k) {
          for (int trial = 0; trial < opt.trials; ++trial) {
            const auto f = random_grid_function(0.5, h, static_cast<std::size_t>(k) + 1, draw++);
            worst = std::max(worst, sum_of_difference_residual(f, SumOrder(nu)).relative());
          }
        }
      }
      return row("transfer", label("nu=%.2f", nu), worst, kIdentityTol);
    });
  }
  return run_rows(std::move(jobs));
}

std::vector<CheckRow> verify_parts(const VerifyOptions& opt) {
  std::vector<std::function<CheckRow()>> jobs;
  std::uint64_t stream = 200;
  for (double alpha : kPartsAlphas) {
    const std::uint64_t s = mix_seed(opt.seed, stream++);
    jobs.emplace_back([=] {
      double worst = 0.0;
      std::uint64_t draw = s;
      for (double h : kSteps) {
        for (int k = 2; k <= kMaxK; ++k) {
          for (int trial = 0; trial < opt.trials; ++trial) {
            const auto n = static_cast<std::size_t>(k);
            const auto f = random_grid_function(-1.0, h, n, draw++);
            const auto g = random_grid_function(-1.0, h, n + 1, draw++);
            auto terms = summation_by_parts_terms(f, g, DiffOrder(alpha));
            if (opt.fault == Fault::parts) terms.correction = 0.0;
            worst = std::max(worst, terms.residual().relative());
          }
        }
      }
      return row("parts", label("alpha=%.2f", alpha), worst, kPartsTol);
    });
  }
  return run_rows(std::move(jobs));
}

std::vector<CheckRow> verify_kernel(const VerifyOptions& opt) {
  enum class Check { right, left, unique, constant };
  const bool faulty = opt.fault == Fault::kernel;
  std::vector<std::function<CheckRow()>> jobs;
  std::uint64_t stream = 300;
  for (double alpha : kKernelAlphas) {
    for (Check check : {Check::right, Check::left, Check::unique, Check::constant}) {
      const std::uint64_t s = mix_seed(opt.seed, stream++);
      jobs.emplace_back([=] {
        std::mt19937_64 rng(s);
        std::uniform_real_distribution<double> dist(-2.0, 2.0);
        const DiffOrder al(alpha);
        double worst = 0.0;
        for (double h : kSteps) {
          for (int k = 2; k <= kMaxK; ++k) {
            const HGrid grid(0.25, h, k);
            for (int trial = 0; trial < opt.trials; ++trial) {
              const double c = dist(rng);
              const double d = dist(rng);
              switch (check) {
                case Check::right: {
                  auto f = right_kernel_solution(grid, al, c);
                  if (faulty) f = corrupt(f, 0);
                  worst = std::max(worst, right_frac_diff(f, al).sup_norm() / std::max(1.0, f.sup_norm()));
                  break;
                }
                case Check::left: {
                  auto f = left_kernel_solution(grid, al, c);
                  if (faulty) f = corrupt(f, 0);
                  worst = std::max(worst, left_frac_diff(f, al).sup_norm() / std::max(1.0, f.sup_norm()));
                  break;
                }
                case Check::unique: {
                  auto f = right_kernel_solution(grid, al, c);
                  if (faulty) f = corrupt(f, 0);
                  const auto solved = right_kernel_by_linear_solve(grid, al, f.back());
                  worst = std::max(worst, (solved - f).sup_norm() / std::max(1.0, f.sup_norm()));
                  break;
                }
                case Check::constant: {
                  auto f = right_constant_solution(grid, al, c, d);
                  if (faulty) f = corrupt(f, 0);
                  const auto diff = right_frac_diff(f, al);
                  double dev = 0.0;
                  // The constant holds on {a - gamma h, ..., b - 2h - gamma h}.
                  for (std::size_t j = 0; j + 1 < diff.size(); ++j) dev = std::max(dev, std::fabs(diff[j] - c));
                  worst = std::max(worst, dev);
                  break;
                }
              }
            }
          }
        }
        static constexpr const char* names[] = {"right kernel annihilated", "left kernel annihilated",
                                                "uniqueness (linear solve)", "constant rhs"};
        static constexpr double tols[] = {kKernelTol, kKernelTol, kUniquenessTol, kConstantRhsTol};
        const auto idx = static_cast<std::size_t>(check);
        return row("kernel", label("alpha=%.2f ", alpha) + names[idx], worst, tols[idx]);
      });
    }
  }
  return run_rows(std::move(jobs));
}

std::vector<CheckRow> verify_examples(const VerifyOptions& opt) {
  enum class Check { el, boundary, oracle, minimality, line };
  std::vector<std::function<CheckRow()>> jobs;
  std::uint64_t stream = 400;
  for (int example : {1, 2}) {
    for (double alpha : kExampleAlphas) {
      for (Check check : {Check::el, Check::boundary, Check::oracle, Check::minimality, Check::line}) {
        if (check == Check::line && !(example == 1 && alpha == 1.0)) continue;
        const std::uint64_t s = mix_seed(opt.seed, stream++);
        jobs.emplace_back([=] {
          const DiffOrder al(alpha);
          double worst = 0.0;
          std::uint64_t draw = s;
          for (double h : kExampleSteps) {
            for (int k : kExampleKs) {
              const HGrid grid(0.0, h, k);
              for (const auto& ab : kBoundaryPairs) {
                const double A = ab[0], B = ab[1];
                const auto problem = example == 1 ? example1_problem(grid, al, A, B) : example2_problem(grid, al, A, B);
                auto sol = example == 1 ? solve_example1(grid, al, A, B) : solve_example2(grid, al, A, B);
                GridFunction y = sol.y;
                if (opt.fault == Fault::examples) {
                  std::vector<double> v(y.values().begin(), y.values().end());
                  v[static_cast<std::size_t>(k / 2)] += 1e-5 * std::max({1.0, std::fabs(A), std::fabs(B)});
                  y = GridFunction(y.origin(), y.h(), std::move(v));
                }
                const double bscale = std::max({1.0, std::fabs(A), std::fabs(B)});
                switch (check) {
                  case Check::el: {
                    double m = 0.0;
                    if (example == 1) {
                      m = el_residual(problem, y).sup_norm() / std::max(1.0, y.sup_norm());
                    } else {
                      const auto op = el_operator(y, al);
                      for (double v : op.values()) m = std::max(m, std::fabs(v - 1.0));
                    }
                    worst = std::max(worst, m);
                    break;
                  }
                  case Check::boundary:
                    worst = std::max({worst, std::fabs(y.front() - A) / bscale, std::fabs(y.back() - B) / bscale});
                    break;
                  case Check::oracle:
                    worst = std::max(worst, (brute_force_minimizer(problem) - y).sup_norm());
                    break;
                  case Check::minimality: {
                    const auto rep = perturbation_check(problem, y, opt.trials, draw++);
                    worst = std::max(worst, std::max(0.0, -rep.worst_gain / rep.scale));
                    break;
                  }
                  case Check::line: {
                    const double slope = (B - A) / (grid.b() - grid.a());
                    for (std::size_t j = 0; j < y.size(); ++j) {
                      worst = std::max(worst, std::fabs(y[j] - (slope * (grid.point(static_cast<int>(j)) - grid.a()) + A)));
                    }
                    break;
                  }
                }
              }
            }
          }
          static constexpr const char* names[] = {"euler-lagrange", "boundary values", "oracle gap",
                                                  "perturbation minimality", "straight line"};
          static constexpr double tols[] = {kElTol, kBoundaryTol, kOracleTol, kMinimalityTol, kStraightLineTol};
          const auto idx = static_cast<std::size_t>(check);
          return row("examples", label("example %.0f alpha=%.2f ", example, alpha) + names[idx], worst, tols[idx]);
        });
      }
    }
  }
  return run_rows(std::move(jobs));
}

std::vector<CheckRow> run_verify(std::string_view which, const VerifyOptions& opt) {
  if (opt.trials < 1) throw DomainError("verify: trials must be >= 1");
  const bool all = which == "all";
  std::vector<CheckRow> rows;
  const auto append = [&rows](std::vector<CheckRow> more) {
    rows.insert(rows.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  };
  bool known = all;
  if (all || which == "exponents") append(verify_exponents(opt)), known = true;
  if (all || which == "transfer") append(verify_transfer(opt)), known = true;
  if (all || which == "parts") append(verify_parts(opt)), known = true;
  if (all || which == "kernel") append(verify_kernel(opt)), known = true;
  if (all || which == "examples") append(verify_examples(opt)), known = true;
  if (!known) throw DomainError("verify: unknown suite '" + std::string(which) + "'");
  return rows;
}

}  // namespace frach
