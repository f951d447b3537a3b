#include "frach/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "frach/specfun.hpp"

namespace frach {

namespace {

constexpr double kFiniteDiffStep = 1e-6;
// Central differences are exact on quadratics, so a unit-scale step only removes round-off.
constexpr double kQuadraticDiffStep = 1.0;

double gamma_of(double x) { return log_gamma_signed(x).value(); }

void require_full_grid(const VariationalProblem& p, const GridFunction& y) {
  if (y.size() != p.grid.size() || std::fabs(y.origin() - p.grid.a()) > 1e-12 * p.grid.h() ||
      std::fabs(y.h() - p.grid.h()) > 1e-12 * p.grid.h()) {
    throw DomainError("candidate must be defined on the full problem grid");
  }
}

// Pieces shared by both explicit minimizers, indexed by t = a + (j+1) h, j = 0..k-1.
struct MinimizerBasis {
  std::vector<double> phi;  // 1/Gamma(alpha) * left sum (based at a + gamma h) of (b - h - s)_h^(alpha-1)
  std::vector<double> psi;  // h^gamma / Gamma(alpha) * (t - a - gamma h)_h^(alpha-1)
  GridFunction kernel;      // s -> (b - h - s)_h^(alpha-1) on {a + gamma h, ..., b - h + gamma h}
};

MinimizerBasis make_basis(const HGrid& grid, DiffOrder alpha) {
  const double h = grid.h();
  const double g = alpha.gamma();
  const int k = grid.k();
  std::vector<double> ker(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    // (b - h - s_i)/h = k - 1 - gamma - i
    ker[i] = h_factorial_steps(k - 1 - g - i, alpha.alpha() - 1.0, h);
  }
  GridFunction kernel(grid.a() + g * h, h, std::move(ker));
  const GridFunction summed = left_frac_sum(kernel, SumOrder(alpha.alpha()));
  const double inv_gamma = 1.0 / gamma_of(alpha.alpha());

  MinimizerBasis basis{std::vector<double>(k), std::vector<double>(k), kernel};
  // Transferring Delta_h through the order-alpha sum leaves the boundary term
  // alpha/Gamma(alpha+1) (t - a - gamma h)_h^(alpha-1) times the order-gamma sum at
  // its first point, which is h^gamma y(a).
  const double hg = std::pow(h, g);
  for (int j = 0; j < k; ++j) {
    basis.phi[j] = inv_gamma * summed[j];
    basis.psi[j] = hg * inv_gamma * h_factorial_steps(j + 1 - g, alpha.alpha() - 1.0, h);
  }
  return basis;
}

void check_determinable(const std::vector<double>& phi) {
  double scale = 1.0;
  for (double v : phi) scale = std::max(scale, std::fabs(v));
  if (std::fabs(phi.back()) <= 1e-12 * scale) {
    throw SingularProblemError("end condition cannot determine the free constant");
  }
}

Solution finish(const VariationalProblem& problem, std::vector<double> values, double constant) {
  GridFunction y(problem.grid.a(), problem.grid.h(), std::move(values));
  const double obj = objective(problem, y);
  const double res = el_residual(problem, y).sup_norm();
  return {std::move(y), constant, obj, res};
}

std::vector<double> gradient(const VariationalProblem& problem, std::vector<double> y) {
  const std::size_t k = static_cast<std::size_t>(problem.grid.k());
  const double relative_step =
      problem.lagrangian.tag == LagrangianTag::custom ? kFiniteDiffStep : kQuadraticDiffStep;
  std::vector<double> grad(k - 1);
  for (std::size_t j = 1; j < k; ++j) {
    const double y0 = y[j];
    const double step = relative_step * std::max(1.0, std::fabs(y0));
    y[j] = y0 + step;
    const double fp = objective(problem, GridFunction(problem.grid.a(), problem.grid.h(), y));
    y[j] = y0 - step;
    const double fm = objective(problem, GridFunction(problem.grid.a(), problem.grid.h(), y));
    y[j] = y0;
    grad[j - 1] = (fp - fm) / (2.0 * step);
  }
  return grad;
}

double sup(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

// v is linear in y: column i holds the aligned left difference of the unit vector e_i.
std::vector<std::vector<double>> difference_jacobian(const VariationalProblem& problem) {
  const std::size_t n = problem.grid.size();
  std::vector<std::vector<double>> cols(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    const GridFunction v =
        left_frac_diff_aligned(GridFunction(problem.grid.a(), problem.grid.h(), std::move(e)), problem.alpha);
    cols[i].assign(v.values().begin(), v.values().end());
  }
  return cols;
}

// dJ/dy_i = h (L_u at t = t_i - h + sum_t L_v(t) dv(t)/dy_i), from the Lagrangian's own partials.
std::vector<double> exact_gradient(const VariationalProblem& problem,
                                   const std::vector<std::vector<double>>& jac, const std::vector<double>& y) {
  const GridFunction yf(problem.grid.a(), problem.grid.h(), y);
  const GridFunction v = left_frac_diff_aligned(yf, problem.alpha);
  const double h = problem.grid.h();
  std::vector<double> lv(v.size());
  for (std::size_t t = 0; t < v.size(); ++t) lv[t] = problem.lagrangian.d_v(v.abscissa(t), y[t + 1], v[t]);
  std::vector<double> grad(y.size() - 2);
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    double acc = problem.lagrangian.d_u(v.abscissa(i - 1), y[i], v[i - 1]);
    for (std::size_t t = 0; t < v.size(); ++t) acc += lv[t] * jac[i][t];
    grad[i - 1] = h * acc;
  }
  return grad;
}

GridFunction descend(const VariationalProblem& problem, std::vector<double> y) {
  constexpr int kMaxIterations = 1'000'000;
  constexpr double kGradientTolerance = 1e-10;
  const auto eval = [&](const std::vector<double>& v) {
    for (double x : v) {
      if (!std::isfinite(x)) return HUGE_VAL;
    }
    return objective(problem, GridFunction(problem.grid.a(), problem.grid.h(), v));
  };
  const auto jac = difference_jacobian(problem);
  double step = 1.0;
  double f = eval(y);
  auto g = exact_gradient(problem, jac, y);
  for (int it = 0; it < kMaxIterations; ++it) {
    const double g_sup = sup(g);
    if (g_sup < kGradientTolerance) return {problem.grid.a(), problem.grid.h(), std::move(y)};
    double gg = 0.0;
    for (double x : g) gg += x * x;
    step *= 2.0;
    std::vector<double> trial = y;
    for (;;) {
      for (std::size_t j = 0; j < g.size(); ++j) trial[j + 1] = y[j + 1] - step * g[j];
      const double ft = eval(trial);
      const double decrease = 1e-4 * step * gg;
      bool accept = ft <= f - decrease && ft < f;
      std::vector<double> gt;
      if (!accept && decrease < 1e-14 * std::max(1.0, std::fabs(f)) && ft <= f + 1e-14 * std::max(1.0, std::fabs(f))) {
        // The objective can no longer resolve the decrease; the exact gradient still can.
        gt = exact_gradient(problem, jac, trial);
        accept = trial != y && sup(gt) < g_sup;
      }
      if (accept) {
        if (!std::isfinite(ft) || std::fabs(ft) > 1e300) {
          throw NonConvergenceError("gradient descent: objective unbounded below");
        }
        y = trial;
        f = ft;
        g = gt.empty() ? exact_gradient(problem, jac, y) : std::move(gt);
        break;
      }
      step *= 0.5;
      if (step < 1e-30) throw NonConvergenceError("gradient descent: line search stalled");
    }
  }
  throw NonConvergenceError("gradient descent: iteration cap reached");
}

}  // namespace

Lagrangian Lagrangian::quadratic_v2() {
  return {[](double, double, double v) { return v * v; },
          [](double, double, double) { return 0.0; },
          [](double, double, double v) { return 2.0 * v; }, LagrangianTag::quadratic_v2};
}

Lagrangian Lagrangian::quadratic_minus_u() {
  return {[](double, double u, double v) { return 0.5 * v * v - u; },
          [](double, double, double) { return -1.0; },
          [](double, double, double v) { return v; }, LagrangianTag::quadratic_minus_u};
}

Lagrangian Lagrangian::custom(Fn value, Fn d_u, Fn d_v) {
  return {std::move(value), std::move(d_u), std::move(d_v), LagrangianTag::custom};
}

double derivative_consistency(const Lagrangian& lagrangian, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const double t = dist(rng), u = dist(rng), v = dist(rng);
    const double step = 1e-6 * std::max({1.0, std::fabs(u), std::fabs(v)});
    const double du = (lagrangian.value(t, u + step, v) - lagrangian.value(t, u - step, v)) / (2 * step);
    const double dv = (lagrangian.value(t, u, v + step) - lagrangian.value(t, u, v - step)) / (2 * step);
    worst = std::max({worst, std::fabs(du - lagrangian.d_u(t, u, v)),
                      std::fabs(dv - lagrangian.d_v(t, u, v))});
  }
  return worst;
}

VariationalProblem example1_problem(const HGrid& grid, DiffOrder alpha, double A, double B) {
  return {grid, alpha, A, B, Lagrangian::quadratic_v2()};
}

VariationalProblem example2_problem(const HGrid& grid, DiffOrder alpha, double A, double B) {
  return {grid, alpha, A, B, Lagrangian::quadratic_minus_u()};
}

double objective(const VariationalProblem& problem, const GridFunction& y) {
  require_full_grid(problem, y);
  const GridFunction v = left_frac_diff_aligned(y, problem.alpha);
  const double h = problem.grid.h();
  double acc = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    acc += problem.lagrangian.value(v.abscissa(j), y[j + 1], v[j]) * h;
  }
  return acc;
}

GridFunction el_residual(const VariationalProblem& problem, const GridFunction& y) {
  require_full_grid(problem, y);
  const GridFunction v = left_frac_diff_aligned(y, problem.alpha);
  std::vector<double> lu(v.size());
  std::vector<double> lv(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    lu[j] = problem.lagrangian.d_u(v.abscissa(j), y[j + 1], v[j]);
    lv[j] = problem.lagrangian.d_v(v.abscissa(j), y[j + 1], v[j]);
  }
  // L_v lives on {a, ..., b-h}; its right difference has endpoint b-h.
  const GridFunction transposed = right_frac_diff_aligned(GridFunction(v.origin(), v.h(), lv), problem.alpha);
  std::vector<double> out(transposed.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = lu[j] + transposed[j];
  return {transposed.origin(), transposed.h(), std::move(out)};
}

GridFunction el_operator(const GridFunction& y, DiffOrder alpha) {
  return right_frac_diff_aligned(left_frac_diff_aligned(y, alpha), alpha);
}

Solution solve_example1(const HGrid& grid, DiffOrder alpha, double A, double B) {
  const MinimizerBasis basis = make_basis(grid, alpha);
  check_determinable(basis.phi);
  const double c = (B - A * basis.psi.back()) / basis.phi.back();
  std::vector<double> y(grid.size());
  y[0] = A;
  for (std::size_t j = 0; j < basis.phi.size(); ++j) y[j + 1] = c * basis.phi[j] + A * basis.psi[j];
  return finish(example1_problem(grid, alpha, A, B), std::move(y), c);
}

Solution solve_example2(const HGrid& grid, DiffOrder alpha, double A, double B,
                        Example2Coefficient form) {
  const MinimizerBasis basis = make_basis(grid, alpha);
  check_determinable(basis.phi);
  const double al = alpha.alpha();
  const double h = grid.h();
  const double rb = grid.b() - h;
  const double inv_gamma1 = 1.0 / gamma_of(al + 1.0);
  // Both readings satisfy the Euler-Lagrange equation and reproduce the
  // brute-force minimizer (tests/test_variational.cpp); `shifted` is the form
  // written for the variable of the order-alpha sum.
  const double offset = form == Example2Coefficient::shifted ? grid.b() : rb + al * h;
  std::vector<double> forcing(basis.kernel.size());
  for (std::size_t i = 0; i < forcing.size(); ++i) {
    const double s = basis.kernel.abscissa(i);
    forcing[i] = (offset - rb * al - al * al * h - s) * inv_gamma1 * basis.kernel[i];
  }
  const GridFunction chi =
      left_frac_sum(GridFunction(basis.kernel.origin(), h, std::move(forcing)), SumOrder(al));

  // alpha / Gamma(alpha + 1) = 1 / Gamma(alpha), so the d-basis coincides with phi.
  const double d = (B - chi.back() - A * basis.psi.back()) / basis.phi.back();
  std::vector<double> y(grid.size());
  y[0] = A;
  for (std::size_t j = 0; j < basis.phi.size(); ++j) {
    y[j + 1] = chi[j] + d * basis.phi[j] + A * basis.psi[j];
  }
  return finish(example2_problem(grid, alpha, A, B), std::move(y), d);
}

SummationByPartsTerms summation_by_parts_terms(const GridFunction& f, const GridFunction& g,
                                               DiffOrder alpha) {
  if (g.size() != f.size() + 1 || f.size() < 2) {
    throw DomainError("summation by parts: need f on {a..b-h} and g on {a..b} with b - a >= 2h");
  }
  if (std::fabs(f.origin() - g.origin()) > 1e-12 * g.h()) {
    throw DomainError("summation by parts: f and g must share the left endpoint");
  }
  const double h = g.h();
  const double gm = alpha.gamma();
  const std::size_t k = f.size();
  SummationByPartsTerms terms;

  const GridFunction dg = left_frac_diff_aligned(g, alpha);
  for (std::size_t j = 0; j < k; ++j) terms.lhs += f[j] * dg[j] * h;

  const double hg = std::pow(h, gm);
  terms.boundary = hg * f[k - 1] * g[k] - hg * f[0] * g[0];
  const GridFunction df = right_frac_diff_aligned(f, alpha);
  for (std::size_t j = 0; j + 1 < k; ++j) terms.transposed += df[j] * g[j + 1] * h;
  if (gm > 0.0) {
    double from_a = 0.0;
    double from_sigma_a = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      // (t + gamma h - a)/h = j + gamma
      from_a += h_factorial_steps(static_cast<double>(j) + gm, gm - 1.0, h) * f[j] * h;
    }
    for (std::size_t j = 1; j < k; ++j) {
      from_sigma_a += h_factorial_steps(static_cast<double>(j) - 1.0 + gm, gm - 1.0, h) * f[j] * h;
    }
    terms.correction = gm * g[0] / gamma_of(gm + 1.0) * (from_a - from_sigma_a);
  }
  return terms;
}

IdentityResidual SummationByPartsTerms::residual() const {
  IdentityResidual r;
  r.max_abs = std::fabs(lhs - (boundary + transposed + correction));
  r.scale = std::max({1.0, std::fabs(lhs), std::fabs(boundary), std::fabs(transposed),
                      std::fabs(correction)});
  return r;
}

IdentityResidual summation_by_parts_residual(const GridFunction& f, const GridFunction& g,
                                             DiffOrder alpha) {
  return summation_by_parts_terms(f, g, alpha).residual();
}

ConvexityReport joint_convexity_check(const Lagrangian& lagrangian, const HGrid& grid, int trials,
                                      std::uint64_t seed) {
  if (trials < 1) throw DomainError("joint_convexity_check: trials must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  std::uniform_int_distribution<int> index(0, grid.k());
  ConvexityReport report{true, -std::numeric_limits<double>::infinity()};
  for (int i = 0; i < trials; ++i) {
    const double t = grid.point(index(rng));
    const double u = dist(rng), v = dist(rng), u2 = dist(rng), v2 = dist(rng);
    const double l1 = lagrangian.value(t, u, v);
    const double l2 = lagrangian.value(t, u2, v2);
    const double violation =
        (u - u2) * lagrangian.d_u(t, u2, v2) + (v - v2) * lagrangian.d_v(t, u2, v2) - (l1 - l2);
    report.worst_violation = std::max(report.worst_violation, violation);
    const double scale = std::max({1.0, std::fabs(l1), std::fabs(l2)});
    if (violation > 1e-9 * scale) report.passed = false;
  }
  return report;
}

PerturbationReport perturbation_check(const VariationalProblem& problem, const GridFunction& y,
                                      int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const double base = objective(problem, y);
  PerturbationReport report{std::numeric_limits<double>::infinity(), std::max(1.0, std::fabs(base))};
  std::vector<double> z(y.values().begin(), y.values().end());
  for (int i = 0; i < trials; ++i) {
    for (std::size_t j = 1; j + 1 < z.size(); ++j) z[j] = y[j] + dist(rng);
    const double gain = objective(problem, GridFunction(y.origin(), y.h(), z)) - base;
    report.worst_gain = std::min(report.worst_gain, gain);
  }
  return report;
}

std::vector<double> solve_linear_system(DenseMatrix m, std::vector<double> rhs) {
  const std::size_t n = m.size();
  if (rhs.size() != n) throw DomainError("solve_linear_system: dimension mismatch");
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::fabs(m(i, j)));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(m(r, col)) > std::fabs(m(piv, col))) piv = r;
    }
    if (!(std::fabs(m(piv, col)) > 1e-12 * scale)) {
      throw SingularSystemError("solve_linear_system: pivot below tolerance");
    }
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      std::swap(rhs[piv], rhs[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = m(r, col) / m(col, col);
      if (factor == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) m(r, j) -= factor * m(col, j);
      rhs[r] -= factor * rhs[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = rhs[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= m(i, j) * x[j];
    x[i] = acc / m(i, i);
  }
  return x;
}

GridFunction brute_force_minimizer(const VariationalProblem& problem) {
  const HGrid& grid = problem.grid;
  const std::size_t k = static_cast<std::size_t>(grid.k());
  std::vector<double> y0(k + 1);
  for (std::size_t j = 0; j <= k; ++j) {
    y0[j] = problem.A + (problem.B - problem.A) * static_cast<double>(j) / static_cast<double>(k);
  }
  y0.front() = problem.A;
  y0.back() = problem.B;

  if (problem.lagrangian.tag == LagrangianTag::custom) return descend(problem, std::move(y0));

  // The gradient of a quadratic objective is affine; probe it along each interior direction.
  const std::size_t n = k - 1;
  const auto g0 = gradient(problem, y0);
  DenseMatrix hess(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto probe = y0;
    probe[i + 1] += 1.0;
    const auto gi = gradient(problem, probe);
    for (std::size_t r = 0; r < n; ++r) hess(r, i) = gi[r] - g0[r];
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = 0.5 * (hess(i, j) + hess(j, i));
      hess(i, j) = s;
      hess(j, i) = s;
    }
  }
  std::vector<double> rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = -g0[i];
  const auto step = solve_linear_system(std::move(hess), std::move(rhs));
  for (std::size_t i = 0; i < n; ++i) y0[i + 1] += step[i];
  return {grid.a(), grid.h(), std::move(y0)};
}

}  // namespace frach
