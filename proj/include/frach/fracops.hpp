#pragma once

// Forward h-difference, h-sum, and the left/right fractional h-sums and
// h-differences on uniform grids.
//
// For f on {a, a+h, ..., b} and order nu > 0
//
//   (left sum)(t)  = 1/Gamma(nu) sum_{s=a}^{t-nu h} (t - s - h)_h^(nu-1) f(s) h,  t in {a+nu h, ..., b+nu h}
//   (right sum)(t) = 1/Gamma(nu) sum_{s=t+nu h}^{b} (s - t - h)_h^(nu-1) f(s) h,  t in {a-nu h, ..., b-nu h}
//
// and for 0 < alpha <= 1, gamma = 1 - alpha,
//
//   left difference  = Delta_h (left sum of order gamma)     on {a+gamma h, ..., b-h+gamma h}
//   right difference = -Delta_h (right sum of order gamma)   on {a-gamma h, ..., b-h-gamma h}
//
// Summation bounds are handled with integer indices; only the origins carry
// the real offsets nu*h. Every output is stored in ascending abscissa order.

#include <vector>

#include "frach/grid.hpp"

namespace frach {

/// Order of a fractional sum, nu >= 0.
class SumOrder {
 public:
  explicit SumOrder(double nu);
  double value() const { return nu_; }

 private:
  double nu_;
};

/// Order of a fractional difference, 0 < alpha <= 1.
class DiffOrder {
 public:
  explicit DiffOrder(double alpha);
  double alpha() const { return alpha_; }
  double gamma() const { return 1.0 - alpha_; }

 private:
  double alpha_;
};

enum class Side { left, right };

/// Max absolute deviation between the two sides of an identity, together with
/// the magnitude of the quantities compared (at least 1).
struct IdentityResidual {
  double max_abs = 0.0;
  double scale = 1.0;
  double relative() const { return max_abs / scale; }
};

GridFunction forward_diff(const GridFunction& f);
GridFunction h_sum(const GridFunction& f);

/// Convolution weights w[m] = h / Gamma(nu) * ((nu + m - 1) h)_h^(nu-1), m = 0..n-1.
/// A fractional sum is value_j = sum_i w[|j - i|] f_i over its index range.
std::vector<double> fractional_sum_weights(SumOrder nu, double h, std::size_t n);

GridFunction left_frac_sum(const GridFunction& f, SumOrder nu);
GridFunction right_frac_sum(const GridFunction& f, SumOrder nu);
GridFunction left_frac_diff(const GridFunction& f, DiffOrder alpha);
GridFunction right_frac_diff(const GridFunction& f, DiffOrder alpha);

// Aligned notation: the same values reported on {a, ..., b-h}.
GridFunction left_frac_diff_aligned(const GridFunction& f, DiffOrder alpha);
GridFunction right_frac_diff_aligned(const GridFunction& f, DiffOrder alpha);

/// Residual of  (left sum of Delta_h f) = Delta_h (left sum of f) - nu/Gamma(nu+1) (t-a)_h^(nu-1) f(a)
/// over t in {a+nu h, ..., b-h+nu h}.
IdentityResidual sum_of_difference_residual(const GridFunction& f, SumOrder nu);

/// Residual of the law of exponents: the sum of order mu applied to the sum of
/// order nu against the single sum of order mu + nu.
IdentityResidual exponent_law_residual(const GridFunction& f, SumOrder mu, SumOrder nu, Side side);

}  // namespace frach
