#pragma once

// Discrete fractional variational problems
//
//   J(y) = sum_{t=a}^{b-h} L(t, y(t+h), v(t)) h,   y(a) = A, y(b) = B,
//
// where v is the left fractional difference of y in aligned notation (reported
// on {a, ..., b-h}). The Euler-Lagrange equation is
//
//   L_u[y](t) + (right fractional difference, endpoint b-h, of L_v[y])(t) = 0,  t in {a, ..., b-2h}.

#include <cstdint>
#include <functional>
#include <vector>

#include "frach/fracops.hpp"
#include "frach/grid.hpp"

namespace frach {

enum class LagrangianTag { quadratic_v2, quadratic_minus_u, custom };

struct Lagrangian {
  using Fn = std::function<double(double t, double u, double v)>;

  Fn value;
  Fn d_u;
  Fn d_v;
  LagrangianTag tag = LagrangianTag::custom;

  /// L = v^2
  static Lagrangian quadratic_v2();
  /// L = v^2/2 - u
  static Lagrangian quadratic_minus_u();
  static Lagrangian custom(Fn value, Fn d_u, Fn d_v);
};

/// Max |analytic - central difference| of L_u and L_v over seeded samples in [-10, 10]^3.
double derivative_consistency(const Lagrangian& lagrangian, int trials, std::uint64_t seed);

struct VariationalProblem {
  HGrid grid;
  DiffOrder alpha;
  double A;
  double B;
  Lagrangian lagrangian;
};

VariationalProblem example1_problem(const HGrid& grid, DiffOrder alpha, double A, double B);
VariationalProblem example2_problem(const HGrid& grid, DiffOrder alpha, double A, double B);

struct Solution {
  GridFunction y;
  double constant;  // c for the first example, d for the second
  double objective_value;
  double el_residual_norm;
};

double objective(const VariationalProblem& problem, const GridFunction& y);

/// L_u + right difference of L_v, on {a, ..., b-2h}.
GridFunction el_residual(const VariationalProblem& problem, const GridFunction& y);

/// Right difference (endpoint b-h) of the left difference of y, both aligned, on {a, ..., b-2h}.
GridFunction el_operator(const GridFunction& y, DiffOrder alpha);

/// Minimizer of sum v^2 h: y = c phi + A psi on {a+h, ..., b}, c fixed by y(b) = B.
Solution solve_example1(const HGrid& grid, DiffOrder alpha, double A, double B);

/// Which reading of the inhomogeneous coefficient to use for the second example.
///   shifted: (b - (b-h) alpha - alpha^2 h - s) on s in {a + gamma h, ...}
///   display: ((b-h) + alpha h - (b-h) alpha - alpha^2 h - s), the same expression
///            written for the unshifted variable.
/// Both give the same minimizer; they differ by a multiple of the kernel, so only d changes.
enum class Example2Coefficient { shifted, display };

/// Minimizer of sum (v^2/2 - y(t+h)) h.
Solution solve_example2(const HGrid& grid, DiffOrder alpha, double A, double B,
                        Example2Coefficient form = Example2Coefficient::shifted);

/// Terms of the fractional summation-by-parts formula for f on {a, ..., b-h}, g on {a, ..., b}:
///   sum f (left difference of g) h
///     = boundary + sum (right difference, endpoint b-h, of f) g(t+h) h + correction.
struct SummationByPartsTerms {
  double lhs = 0.0;
  double boundary = 0.0;    // h^gamma f(b-h) g(b) - h^gamma f(a) g(a)
  double transposed = 0.0;
  double correction = 0.0;  // gamma g(a)/Gamma(gamma+1) times the difference of the two weighted sums
  IdentityResidual residual() const;
};

SummationByPartsTerms summation_by_parts_terms(const GridFunction& f, const GridFunction& g,
                                               DiffOrder alpha);
IdentityResidual summation_by_parts_residual(const GridFunction& f, const GridFunction& g,
                                             DiffOrder alpha);

struct ConvexityReport {
  bool passed = false;
  // Largest signed violation of L(x) - L(y) - grad L(y).(x - y) >= 0; negative means slack everywhere.
  double worst_violation = 0.0;
};

/// Samples the first-order convexity inequality in (u, v) at abscissae of `grid`.
ConvexityReport joint_convexity_check(const Lagrangian& lagrangian, const HGrid& grid, int trials,
                                      std::uint64_t seed);

/// Smallest objective change over seeded perturbations z, z(a) = z(b) = 0, |z| <= 1.
struct PerturbationReport {
  double worst_gain = 0.0;
  double scale = 1.0;
};
PerturbationReport perturbation_check(const VariationalProblem& problem, const GridFunction& y,
                                      int trials, std::uint64_t seed);

class DenseMatrix {
 public:
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}
  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

/// Gaussian elimination with partial pivoting. SingularSystemError on a pivot below 1e-12 * max|M|.
std::vector<double> solve_linear_system(DenseMatrix m, std::vector<double> rhs);

/// Minimizes the objective over the k-1 interior values. Quadratic Lagrangians are solved
/// exactly from a finite-difference Hessian; custom ones by gradient descent.
GridFunction brute_force_minimizer(const VariationalProblem& problem);

}  // namespace frach
