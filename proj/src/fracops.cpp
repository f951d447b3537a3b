#include "frach/fracops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "frach/specfun.hpp"

namespace frach {

namespace {

void require_two_points(const GridFunction& f, const char* who) {
  if (f.size() < 2) throw TooShortError(std::string(who) + ": need at least two points");
}

IdentityResidual compare(const GridFunction& lhs, const GridFunction& rhs) {
  if (lhs.size() != rhs.size() || std::fabs(lhs.origin() - rhs.origin()) > 1e-9 * lhs.h()) {
    throw std::logic_error("identity sides live on different domains");
  }
  IdentityResidual r;
  r.scale = std::max({1.0, lhs.sup_norm(), rhs.sup_norm()});
  for (std::size_t j = 0; j < lhs.size(); ++j) {
    r.max_abs = std::max(r.max_abs, std::fabs(lhs[j] - rhs[j]));
  }
  return r;
}

}  // namespace

SumOrder::SumOrder(double nu) : nu_(nu) {
  if (!std::isfinite(nu) || nu < 0.0) throw DomainError("sum order must be finite and >= 0");
}

DiffOrder::DiffOrder(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("difference order must lie in (0, 1]");
}

GridFunction forward_diff(const GridFunction& f) {
  require_two_points(f, "forward_diff");
  std::vector<double> out(f.size() - 1);
  for (std::size_t j = 0; j + 1 < f.size(); ++j) out[j] = (f[j + 1] - f[j]) / f.h();
  return {f.origin(), f.h(), std::move(out)};
}

GridFunction h_sum(const GridFunction& f) {
  std::vector<double> out(f.size() + 1, 0.0);
  for (std::size_t j = 0; j < f.size(); ++j) out[j + 1] = out[j] + f[j] * f.h();
  return {f.origin(), f.h(), std::move(out)};
}

std::vector<double> fractional_sum_weights(SumOrder nu, double h, std::size_t n) {
  const double v = nu.value();
  if (v == 0.0) throw DomainError("fractional_sum_weights: order 0 has no kernel");
  const double inv_gamma = 1.0 / log_gamma_signed(v).value();
  std::vector<double> w(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double steps = v + static_cast<double>(m) - 1.0;
    // Gamma arguments are steps + 1 = nu + m and steps + 2 - nu = m + 1, both positive.
    if (!(steps + 1.0 > 0.0)) throw std::logic_error("fractional sum kernel hit a Gamma pole");
    w[m] = h * inv_gamma * h_factorial_steps(steps, v - 1.0, h);
  }
  return w;
}

GridFunction left_frac_sum(const GridFunction& f, SumOrder nu) {
  if (nu.value() == 0.0) return f;
  const std::size_t n = f.size();
  const auto w = fractional_sum_weights(nu, f.h(), n);
  std::vector<double> out(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i <= j; ++i) acc += w[j - i] * f[i];
    out[j] = acc;
  }
  return {f.origin() + nu.value() * f.h(), f.h(), std::move(out)};
}

GridFunction right_frac_sum(const GridFunction& f, SumOrder nu) {
  if (nu.value() == 0.0) return f;
  const std::size_t n = f.size();
  const auto w = fractional_sum_weights(nu, f.h(), n);
  std::vector<double> out(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t i = n; i-- > j;) acc += w[i - j] * f[i];
    out[j] = acc;
  }
  return {f.origin() - nu.value() * f.h(), f.h(), std::move(out)};
}

GridFunction left_frac_diff(const GridFunction& f, DiffOrder alpha) {
  require_two_points(f, "left_frac_diff");
  return forward_diff(left_frac_sum(f, SumOrder(alpha.gamma())));
}

GridFunction right_frac_diff(const GridFunction& f, DiffOrder alpha) {
  require_two_points(f, "right_frac_diff");
  return -1.0 * forward_diff(right_frac_sum(f, SumOrder(alpha.gamma())));
}

GridFunction left_frac_diff_aligned(const GridFunction& f, DiffOrder alpha) {
  return left_frac_diff(f, alpha).with_origin(f.origin());
}

GridFunction right_frac_diff_aligned(const GridFunction& f, DiffOrder alpha) {
  return right_frac_diff(f, alpha).with_origin(f.origin());
}

IdentityResidual sum_of_difference_residual(const GridFunction& f, SumOrder nu) {
  require_two_points(f, "sum_of_difference_residual");
  const double v = nu.value();
  const GridFunction lhs = left_frac_sum(forward_diff(f), nu);
  const GridFunction rhs_main = forward_diff(left_frac_sum(f, nu));
  std::vector<double> rhs(rhs_main.values().begin(), rhs_main.values().end());
  if (v > 0.0) {
    const double coeff = v / log_gamma_signed(v + 1.0).value();
    for (std::size_t j = 0; j < rhs.size(); ++j) {
      // t - a = (nu + j) h
      rhs[j] -= coeff * h_factorial_steps(v + static_cast<double>(j), v - 1.0, f.h()) * f.front();
    }
  }
  return compare(lhs, GridFunction(rhs_main.origin(), f.h(), std::move(rhs)));
}

IdentityResidual exponent_law_residual(const GridFunction& f, SumOrder mu, SumOrder nu, Side side) {
  const SumOrder total(mu.value() + nu.value());
  if (side == Side::left) {
    return compare(left_frac_sum(left_frac_sum(f, nu), mu), left_frac_sum(f, total));
  }
  return compare(right_frac_sum(right_frac_sum(f, nu), mu), right_frac_sum(f, total));
}

}  // namespace frach
