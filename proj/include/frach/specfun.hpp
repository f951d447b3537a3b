#pragma once

// Gamma machinery and the h-factorial function
//
//   x_h^(y) = h^y * Gamma(x/h + 1) / Gamma(x/h + 1 - y)
//
// Pole conventions:
//   - denominator on a pole, numerator regular  -> 0
//   - both on poles (-m over -n)                -> h^y (-1)^(n-m) n!/m!
//   - numerator alone on a pole                 -> IndeterminateError
//   - y == 0                                    -> exactly 1

#include <cmath>

#include "frach/errors.hpp"

namespace frach {

/// Distance from the nearest nonpositive integer below which an argument is a pole.
inline constexpr double kPoleTolerance = 1e-9;

/// A real number stored as sign and natural log of its magnitude.
class SignedLogValue {
 public:
  constexpr SignedLogValue() = default;
  SignedLogValue(int sign, double log_magnitude);

  static SignedLogValue zero() { return {}; }
  static SignedLogValue from_value(double v);

  int sign() const { return sign_; }
  double log_magnitude() const { return log_magnitude_; }
  bool is_zero() const { return sign_ == 0; }

  /// Materializes the value; may overflow to +-inf or underflow to 0.
  double value() const;

  SignedLogValue operator*(const SignedLogValue& o) const;
  SignedLogValue operator/(const SignedLogValue& o) const;

 private:
  int sign_ = 0;
  double log_magnitude_ = 0.0;
};

/// True when z lies within kPoleTolerance of {0, -1, -2, ...}.
bool is_gamma_pole(double z);

/// sign(Gamma(x)) and ln|Gamma(x)|. Reflection handles x < 1/2.
SignedLogValue log_gamma_signed(double x);

/// Gamma(p) / Gamma(q) with the pole conventions listed above.
SignedLogValue gamma_ratio(double p, double q);

/// x_h^(y) with x = steps * h, i.e. h^y Gamma(steps + 1) / Gamma(steps + 1 - y).
/// Callers that already know x/h exactly (grid index arithmetic) use this form.
double h_factorial_steps(double steps, double y, double h);

double h_factorial(double x, double y, double h);

/// |x_h^(y) - x^y|, the distance to the h -> 0 limit.
double h_factorial_limit_error(double x, double y, double h);

}  // namespace frach
