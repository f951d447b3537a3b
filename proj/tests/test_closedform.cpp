#include <cmath>

#include "doctest.h"
#include "frach/closedform.hpp"
#include "frach/fracops.hpp"
#include "frach/specfun.hpp"
#include "frach/verify.hpp"

using namespace frach;

namespace {

double max_rel_diff(const GridFunction& f, const GridFunction& g) {
  REQUIRE(f.size() == g.size());
  REQUIRE(std::fabs(f.origin() - g.origin()) < 1e-9 * f.h());
  const double scale = std::max({1.0, f.sup_norm(), g.sup_norm()});
  double m = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) m = std::max(m, std::fabs(f[j] - g[j]));
  return m / scale;
}

}  // namespace

TEST_CASE("power rule with mu = 0 sums the constant one") {
  // left sum of 1 of order nu is (t - a)_h^(nu) / Gamma(nu + 1)
  const HGrid g(0.0, 0.5, 6);
  const double nu = 0.5;
  const auto p = power_rule_left_values(0.0, SumOrder(nu), g);
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double t = p.abscissa(j);
    CHECK(p[j] == doctest::Approx(h_factorial(t - g.a(), nu, g.h()) / std::tgamma(nu + 1)).epsilon(1e-13));
  }
}

TEST_CASE("power rules match the definitional sums") {
  for (double h : {0.25, 1.0, 2.0}) {
    for (int k = 2; k <= 16; ++k) {
      const HGrid g(0.3, h, k);
      for (double nu : {0.0, 0.25, 0.5, 1.0, 1.5}) {
        for (double f : {-0.5, 0.0, 0.5, 1.0, 2.0}) {
          CAPTURE(h);
          CAPTURE(k);
          CAPTURE(nu);
          CAPTURE(f);
          const double mu = f * h;
          const auto left = left_frac_sum(left_monomial(mu, g), SumOrder(nu));
          CHECK(max_rel_diff(left, power_rule_left_values(mu, SumOrder(nu), g)) <= 1e-10);
          const auto right = right_frac_sum(right_monomial(-mu, g), SumOrder(nu));
          CHECK(max_rel_diff(right, power_rule_right_values(-mu, SumOrder(nu), g)) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("power rule domain errors") {
  const HGrid g(0.0, 1.0, 4);
  CHECK_THROWS_AS(power_rule_left(-1.0, SumOrder(0.5), g, 0.5), DomainError);
  CHECK_THROWS_AS(power_rule_left(-1.5, SumOrder(0.5), g, 0.5), DomainError);  // mu/h + nu = -1
  CHECK_THROWS_AS(power_rule_right(1.0, SumOrder(0.5), g, 3.5), DomainError);
  CHECK_THROWS_AS(power_rule_left(0.5, SumOrder(0.5), g, 0.7), DomainError);   // off grid
  CHECK_THROWS_AS(power_rule_left(0.5, SumOrder(0.5), g, -0.5), DomainError);  // before the origin
  CHECK_NOTHROW(power_rule_left(-0.5, SumOrder(0.5), g, 0.5));
}

TEST_CASE("kernel solutions are annihilated") {
  for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
    for (double h : {0.25, 1.0, 2.0}) {
      for (int k : {2, 3, 7, 16}) {
        CAPTURE(alpha);
        CAPTURE(h);
        CAPTURE(k);
        const HGrid g(-0.5, h, k);
        const auto r = right_kernel_solution(g, DiffOrder(alpha), 1.3);
        CHECK(right_frac_diff(r, DiffOrder(alpha)).sup_norm() <= 1e-10 * std::max(1.0, r.sup_norm()));
        const auto l = left_kernel_solution(g, DiffOrder(alpha), -0.7);
        CHECK(left_frac_diff(l, DiffOrder(alpha)).sup_norm() <= 1e-10 * std::max(1.0, l.sup_norm()));
      }
    }
  }
}

TEST_CASE("kernel is one-dimensional") {
  // the linear solve with f(b) pinned reproduces the closed form through the same point
  for (double alpha : {0.1, 0.5, 0.9, 1.0}) {
    for (int k : {2, 5, 12}) {
      const HGrid g(0.0, 0.5, k);
      const auto closed = right_kernel_solution(g, DiffOrder(alpha), 1.0);
      const auto solved = right_kernel_by_linear_solve(g, DiffOrder(alpha), closed.back());
      CHECK(max_rel_diff(closed, solved) <= 1e-8);
    }
  }
}

TEST_CASE("alpha = 1 kernel is constant") {
  const auto r = right_kernel_solution(HGrid(0, 0.5, 5), DiffOrder(1.0), 2.0);
  for (double v : r.values()) CHECK(v == doctest::Approx(2.0));
}

TEST_CASE("constant right-hand side") {
  for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
    for (double h : {0.25, 1.0, 2.0}) {
      for (int k : {2, 3, 9}) {
        CAPTURE(alpha);
        CAPTURE(h);
        CAPTURE(k);
        const HGrid g(1.0, h, k);
        const double c = 0.8;
        const auto y = right_constant_solution(g, DiffOrder(alpha), c, -0.4);
        const auto d = right_frac_diff(y, DiffOrder(alpha));
        double worst = 0.0;
        for (double v : d.values()) worst = std::max(worst, std::fabs(v - c));
        CHECK(worst <= 1e-9 * std::max(1.0, y.sup_norm()));
      }
    }
  }
}

TEST_CASE("constant solution reductions") {
  const HGrid g(0.0, 0.5, 6);
  const DiffOrder al(0.4);
  // c = 0 leaves d alpha / Gamma(alpha + 1) times the kernel profile = d times the unit kernel
  const auto y0 = right_constant_solution(g, al, 0.0, 1.5);
  CHECK(max_rel_diff(y0, right_kernel_solution(g, al, 1.5)) <= 1e-14);
  // superposition in (c, d)
  const auto y1 = right_constant_solution(g, al, 1.0, 0.0);
  const auto y2 = right_constant_solution(g, al, 1.0, 1.5);
  CHECK(max_rel_diff(y2, y1 + y0) <= 1e-14);
  // alpha = 1: y(t) = c (b + h - b - h - t) + d = d - c t, so the right difference is c
  const auto y = right_constant_solution(g, DiffOrder(1.0), 2.0, 3.0);
  for (std::size_t j = 0; j < y.size(); ++j) CHECK(y[j] == doctest::Approx(3.0 - 2.0 * y.abscissa(j)));
}
