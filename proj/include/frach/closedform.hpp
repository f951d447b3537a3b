#pragma once

// Closed forms for fractional sums of h-factorial monomials and the explicit
// solution families of the fractional difference equations
//
//   right difference of f = 0   <=>  f(t) = c/Gamma(alpha) (b - gamma h - t)_h^(alpha-1)
//   left difference of f = 0    <=>  f(t) = c/Gamma(alpha) (t - gamma h - a)_h^(alpha-1)
//   right difference of f = c   <=>  f(t) = [c(b + alpha h - b alpha - alpha^2 h - t) + d alpha] / Gamma(alpha+1)
//                                           * (b - gamma h - t)_h^(alpha-1)
//
// with gamma = 1 - alpha and t ranging over the whole grid {a, ..., b}.

#include "frach/fracops.hpp"
#include "frach/grid.hpp"

namespace frach {

/// Left sum of order nu of s -> (s - a + mu)_h^(mu/h), evaluated at t in {a + nu h, a + nu h + h, ...}:
///   Gamma(mu/h + 1) / Gamma(mu/h + nu + 1) * (t - a + mu)_h^(mu/h + nu).
/// DomainError when mu/h or mu/h + nu is a negative integer, or t is off the shifted grid.
double power_rule_left(double mu, SumOrder nu, const HGrid& grid, double t);

/// Right sum of order nu of s -> (b - mu - s)_h^(-mu/h), evaluated at t in {b - nu h, b - nu h - h, ...}.
double power_rule_right(double mu, SumOrder nu, const HGrid& grid, double t);

/// The monomials the power rules act on, sampled on the grid.
GridFunction left_monomial(double mu, const HGrid& grid);
GridFunction right_monomial(double mu, const HGrid& grid);

/// power_rule_left at every point of {a + nu h, ..., b + nu h}.
GridFunction power_rule_left_values(double mu, SumOrder nu, const HGrid& grid);
/// power_rule_right at every point of {a - nu h, ..., b - nu h}.
GridFunction power_rule_right_values(double mu, SumOrder nu, const HGrid& grid);

GridFunction right_kernel_solution(const HGrid& grid, DiffOrder alpha, double c);
GridFunction left_kernel_solution(const HGrid& grid, DiffOrder alpha, double c);
GridFunction right_constant_solution(const HGrid& grid, DiffOrder alpha, double c, double d);

}  // namespace frach
