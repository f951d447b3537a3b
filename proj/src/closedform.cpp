#include "frach/closedform.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "frach/specfun.hpp"

namespace frach {

namespace {

constexpr double kIndexTolerance = 1e-9;

bool is_negative_integer(double z) {
  const double n = std::round(z);
  return n < 0.0 && std::fabs(z - n) <= kIndexTolerance;
}

// Number of whole steps from `from` to `to`, which must be a nonnegative integer.
double whole_steps(double from, double to, double h, const char* who) {
  const double s = (to - from) / h;
  const double n = std::round(s);
  if (n < 0.0 || std::fabs(s - n) > kIndexTolerance) {
    throw DomainError(std::string(who) + ": abscissa is not on the shifted grid");
  }
  return n;
}

void check_exponents(double e, double nu, const char* who) {
  if (is_negative_integer(e) || is_negative_integer(e + nu)) {
    throw DomainError(std::string(who) + ": excluded exponent (negative integer)");
  }
}

double gamma_ratio_value(double p, double q) { return gamma_ratio(p, q).value(); }

}  // namespace

double power_rule_left(double mu, SumOrder nu, const HGrid& grid, double t) {
  const double h = grid.h();
  const double e = mu / h;
  check_exponents(e, nu.value(), "power_rule_left");
  const double m = whole_steps(grid.a() + nu.value() * h, t, h, "power_rule_left");
  // (t - a + mu)/h = m + nu + mu/h
  return gamma_ratio_value(e + 1.0, e + nu.value() + 1.0) *
         h_factorial_steps(m + nu.value() + e, e + nu.value(), h);
}

double power_rule_right(double mu, SumOrder nu, const HGrid& grid, double t) {
  const double h = grid.h();
  const double e = -mu / h;
  check_exponents(e, nu.value(), "power_rule_right");
  const double m = whole_steps(t, grid.b() - nu.value() * h, h, "power_rule_right");
  // (b - mu - t)/h = m + nu - mu/h
  return gamma_ratio_value(e + 1.0, e + nu.value() + 1.0) *
         h_factorial_steps(m + nu.value() + e, e + nu.value(), h);
}

GridFunction left_monomial(double mu, const HGrid& grid) {
  const double e = mu / grid.h();
  std::vector<double> v(grid.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    v[j] = h_factorial_steps(static_cast<double>(j) + e, e, grid.h());
  }
  return {grid.a(), grid.h(), std::move(v)};
}

GridFunction right_monomial(double mu, const HGrid& grid) {
  const double e = -mu / grid.h();
  const auto k = static_cast<std::size_t>(grid.k());
  std::vector<double> v(grid.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    v[j] = h_factorial_steps(static_cast<double>(k - j) + e, e, grid.h());
  }
  return {grid.a(), grid.h(), std::move(v)};
}

GridFunction power_rule_left_values(double mu, SumOrder nu, const HGrid& grid) {
  const double origin = grid.a() + nu.value() * grid.h();
  std::vector<double> v(grid.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    v[j] = power_rule_left(mu, nu, grid, origin + static_cast<double>(j) * grid.h());
  }
  return {origin, grid.h(), std::move(v)};
}

GridFunction power_rule_right_values(double mu, SumOrder nu, const HGrid& grid) {
  const double origin = grid.a() - nu.value() * grid.h();
  std::vector<double> v(grid.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    v[j] = power_rule_right(mu, nu, grid, origin + static_cast<double>(j) * grid.h());
  }
  return {origin, grid.h(), std::move(v)};
}

GridFunction right_kernel_solution(const HGrid& grid, DiffOrder alpha, double c) {
  const double scale = c / log_gamma_signed(alpha.alpha()).value();
  std::vector<double> v(grid.size());
  for (int j = 0; j <= grid.k(); ++j) {
    // (b - gamma h - t)/h = k - j - gamma; alpha = 1 gives exponent 0 and weight 1.
    v[j] = scale * h_factorial_steps(grid.k() - j - alpha.gamma(), alpha.alpha() - 1.0, grid.h());
  }
  return {grid.a(), grid.h(), std::move(v)};
}

GridFunction left_kernel_solution(const HGrid& grid, DiffOrder alpha, double c) {
  const double scale = c / log_gamma_signed(alpha.alpha()).value();
  std::vector<double> v(grid.size());
  for (int j = 0; j <= grid.k(); ++j) {
    v[j] = scale * h_factorial_steps(j - alpha.gamma(), alpha.alpha() - 1.0, grid.h());
  }
  return {grid.a(), grid.h(), std::move(v)};
}

GridFunction right_constant_solution(const HGrid& grid, DiffOrder alpha, double c, double d) {
  const double al = alpha.alpha();
  const double h = grid.h();
  const double b = grid.b();
  const double denom = log_gamma_signed(al + 1.0).value();
  std::vector<double> v(grid.size());
  for (int j = 0; j <= grid.k(); ++j) {
    const double t = grid.point(j);
    const double coeff = c * (b + al * h - b * al - al * al * h - t) + d * al;
    v[j] = coeff / denom * h_factorial_steps(grid.k() - j - alpha.gamma(), al - 1.0, h);
  }
  return {grid.a(), grid.h(), std::move(v)};
}

}  // namespace frach
