#include <cmath>

#include "doctest.h"
#include "frach/closedform.hpp"
#include "frach/variational.hpp"
#include "frach/verify.hpp"
#include "oracle.hpp"

using namespace frach;

namespace {

double gap(const GridFunction& f, const GridFunction& g) { return (f - g).sup_norm(); }

}  // namespace

TEST_CASE("lagrangian derivatives are consistent") {
  CHECK(derivative_consistency(Lagrangian::quadratic_v2(), 200, 1) < 1e-6);
  CHECK(derivative_consistency(Lagrangian::quadratic_minus_u(), 200, 2) < 1e-6);
  const auto l = Lagrangian::quadratic_v2();
  CHECK(l.value(0, 1, 3) == 9.0);
  CHECK(l.d_v(0, 1, 3) == 6.0);
  const auto m = Lagrangian::quadratic_minus_u();
  CHECK(m.value(0, 2, 4) == 6.0);
  CHECK(m.d_u(0, 2, 4) == -1.0);
}

TEST_CASE("example 1 at alpha = 1 is the straight line") {
  const HGrid g(0.0, 1.0, 4);
  const auto s = solve_example1(g, DiffOrder(1.0), 0.0, 1.0);
  for (std::size_t j = 0; j < s.y.size(); ++j) CHECK(s.y[j] == doctest::Approx(0.25 * j).epsilon(1e-12));
  CHECK(s.el_residual_norm < 1e-12);
}

TEST_CASE("example solutions satisfy boundary values and the Euler-Lagrange equation") {
  for (double alpha : {0.25, 0.5, 0.75, 1.0}) {
    for (double h : {0.5, 1.0}) {
      for (int k : {2, 3, 4, 8}) {
        for (auto [A, B] : {std::pair{0.0, 1.0}, {1.0, 0.0}, {2.0, -3.0}}) {
          CAPTURE(alpha);
          CAPTURE(h);
          CAPTURE(k);
          CAPTURE(A);
          CAPTURE(B);
          const HGrid g(0.0, h, k);
          const DiffOrder al(alpha);
          for (int ex : {1, 2}) {
            const auto s = ex == 1 ? solve_example1(g, al, A, B) : solve_example2(g, al, A, B);
            const auto p = ex == 1 ? example1_problem(g, al, A, B) : example2_problem(g, al, A, B);
            CHECK(std::fabs(s.y.front() - A) <= 1e-12);
            CHECK(std::fabs(s.y.back() - B) <= 1e-12);
            CHECK(el_residual(p, s.y).sup_norm() <= 1e-8);
            CHECK(s.objective_value == doctest::Approx(objective(p, s.y)));
            CHECK(gap(s.y, brute_force_minimizer(p)) <= 1e-6);
          }
        }
      }
    }
  }
}

TEST_CASE("example 2 Euler-Lagrange operator equals one") {
  const HGrid g(0.0, 0.5, 8);
  const DiffOrder al(0.6);
  const auto s = solve_example2(g, al, 0.3, -1.0);
  const auto e = el_operator(s.y, al);
  CHECK(e.size() == static_cast<std::size_t>(g.k() - 1));
  for (double v : e.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("example 2 coefficient forms give the same minimizer") {
  const HGrid g(0.5, 0.5, 6);
  for (double alpha : {0.3, 0.8, 1.0}) {
    const auto s1 = solve_example2(g, DiffOrder(alpha), 1.0, 2.0, Example2Coefficient::shifted);
    const auto s2 = solve_example2(g, DiffOrder(alpha), 1.0, 2.0, Example2Coefficient::display);
    CHECK(gap(s1.y, s2.y) <= 1e-12);
  }
}

TEST_CASE("k = 2 minimizer agrees with a one-dimensional line search") {
  for (double alpha : {0.25, 0.6, 1.0}) {
    const HGrid g(0.0, 0.5, 2);
    for (int ex : {1, 2}) {
      const auto p = ex == 1 ? example1_problem(g, DiffOrder(alpha), 1.0, -1.0)
                             : example2_problem(g, DiffOrder(alpha), 1.0, -1.0);
      const auto s = ex == 1 ? solve_example1(g, DiffOrder(alpha), 1.0, -1.0)
                             : solve_example2(g, DiffOrder(alpha), 1.0, -1.0);
      const double mid = oracle::golden_section(
          [&](double m) { return objective(p, GridFunction(0.0, 0.5, {1.0, m, -1.0})); }, -100, 100);
      CHECK(s.y[1] == doctest::Approx(mid).epsilon(1e-6));
    }
  }
}

TEST_CASE("minimizers beat random perturbations") {
  const HGrid g(0.0, 1.0, 8);
  for (double alpha : {0.25, 1.0}) {
    const auto p1 = example1_problem(g, DiffOrder(alpha), 0.0, 1.0);
    const auto r1 = perturbation_check(p1, solve_example1(g, DiffOrder(alpha), 0.0, 1.0).y, 200, 5);
    CHECK(r1.worst_gain >= -1e-10 * r1.scale);
    const auto p2 = example2_problem(g, DiffOrder(alpha), 0.0, 1.0);
    const auto r2 = perturbation_check(p2, solve_example2(g, DiffOrder(alpha), 0.0, 1.0).y, 200, 6);
    CHECK(r2.worst_gain >= -1e-10 * r2.scale);
  }
}

TEST_CASE("perturbing the minimizer is detected") {
  const HGrid g(0.0, 1.0, 8);
  const auto p = example1_problem(g, DiffOrder(0.5), 0.0, 1.0);
  const auto y = solve_example1(g, DiffOrder(0.5), 0.0, 1.0).y;
  std::vector<double> v(y.values().begin(), y.values().end());
  v[4] += 1e-5;
  const GridFunction bad(y.origin(), y.h(), v);
  CHECK(el_residual(p, bad).sup_norm() > 1e-8);
  CHECK(objective(p, bad) > objective(p, y));
}

TEST_CASE("joint convexity") {
  const HGrid g(0.0, 0.5, 6);
  CHECK(joint_convexity_check(Lagrangian::quadratic_v2(), g, 500, 1).passed);
  CHECK(joint_convexity_check(Lagrangian::quadratic_minus_u(), g, 500, 2).passed);
  const auto v2_minus_u = Lagrangian::custom([](double, double u, double v) { return v * v - u; },
                                             [](double, double, double) { return -1.0; },
                                             [](double, double, double v) { return 2.0 * v; });
  CHECK(joint_convexity_check(v2_minus_u, g, 500, 3).passed);
  const auto concave = Lagrangian::custom([](double, double, double v) { return -v * v; },
                                          [](double, double, double) { return 0.0; },
                                          [](double, double, double v) { return -2.0 * v; });
  const auto rep = joint_convexity_check(concave, g, 500, 4);
  CHECK_FALSE(rep.passed);
  CHECK(rep.worst_violation > 0.0);
}

TEST_CASE("custom lagrangian goes through gradient descent") {
  const HGrid g(0.0, 1.0, 4);
  const DiffOrder al(0.5);
  auto p = example1_problem(g, al, 0.0, 1.0);
  p.lagrangian = Lagrangian::custom([](double, double, double v) { return v * v; },
                                    [](double, double, double) { return 0.0; },
                                    [](double, double, double v) { return 2.0 * v; });
  CHECK(gap(brute_force_minimizer(p), solve_example1(g, al, 0.0, 1.0).y) <= 1e-6);
}

TEST_CASE("descent on an objective unbounded below gives up") {
  auto p = example1_problem(HGrid(0.0, 1.0, 3), DiffOrder(0.5), 0.0, 1.0);
  p.lagrangian = Lagrangian::custom([](double, double, double v) { return -v * v; },
                                    [](double, double, double) { return 0.0; },
                                    [](double, double, double v) { return -2.0 * v; });
  CHECK_THROWS_AS(brute_force_minimizer(p), NonConvergenceError);
}

TEST_CASE("dense linear solves") {
  DenseMatrix m(3);
  m(0, 0) = 0, m(0, 1) = 2, m(0, 2) = 1;
  m(1, 0) = 1, m(1, 1) = 1, m(1, 2) = 0;
  m(2, 0) = 3, m(2, 1) = 0, m(2, 2) = 1;
  const auto x = solve_linear_system(m, {5, 3, 4});
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] == doctest::Approx(2.0));
  CHECK(x[2] == doctest::Approx(1.0).epsilon(1e-12));
  DenseMatrix s(2);
  s(0, 0) = 1, s(0, 1) = 2, s(1, 0) = 2, s(1, 1) = 4;
  CHECK_THROWS_AS(solve_linear_system(s, {1, 2}), SingularSystemError);
}

TEST_CASE("summation by parts") {
  std::uint64_t seed = 900;
  for (double alpha : {0.1, 0.4, 0.7, 1.0}) {
    for (double h : {0.25, 1.0, 2.0}) {
      for (int k : {2, 5, 16}) {
        CAPTURE(alpha);
        CAPTURE(h);
        CAPTURE(k);
        const auto f = random_grid_function(0.2, h, static_cast<std::size_t>(k), seed++);
        const auto g = random_grid_function(0.2, h, static_cast<std::size_t>(k) + 1, seed++);
        const auto terms = summation_by_parts_terms(f, g, DiffOrder(alpha));
        CHECK(terms.residual().relative() <= 1e-9);
        CHECK(summation_by_parts_residual(f, g, DiffOrder(alpha)).relative() <= 1e-9);
        if (alpha == 1.0) CHECK(terms.correction == 0.0);
      }
    }
  }
}

TEST_CASE("the summation by parts correction is not negligible") {
  // g = 1 has zero left difference only at alpha = 1; otherwise the correction balances the sides
  const GridFunction f(0.0, 1.0, {1, 1, 1, 1});
  const GridFunction g(0.0, 1.0, {1, 0, 0, 0, 0});
  const auto t = summation_by_parts_terms(f, g, DiffOrder(0.5));
  CHECK(std::fabs(t.correction) > 1e-3);
  CHECK(std::fabs(t.lhs - (t.boundary + t.transposed)) > 1e-3);
  CHECK(t.residual().relative() <= 1e-12);
}
