#include "frach/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace frach {

namespace {

constexpr double kHalfLogTwoPi = 0.91893853320467274178032973640562;

// Godfrey's Lanczos coefficients, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Above this both Gamma arguments go through the asymptotic series.
constexpr double kStirlingThreshold = 10.0;

// Tail of the Stirling series: ln Gamma(x) - [(x - 1/2) ln x - x + ln(2 pi)/2].
double stirling_tail(double x) {
  const double r = 1.0 / x;
  const double r2 = r * r;
  return r * (1.0 / 12.0 +
              r2 * (-1.0 / 360.0 +
                    r2 * (1.0 / 1260.0 +
                          r2 * (-1.0 / 1680.0 +
                                r2 * (1.0 / 1188.0 +
                                      r2 * (-691.0 / 360360.0 +
                                            r2 * (1.0 / 156.0 + r2 * (-3617.0 / 122400.0))))))));
}

double log_gamma_positive(double x) {
  if (x >= kStirlingThreshold) {
    return (x - 0.5) * std::log(x) - x + kHalfLogTwoPi + stirling_tail(x);
  }
  const double xm = x - 1.0;
  double acc = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    acc += kLanczos[i] / (xm + static_cast<double>(i));
  }
  const double t = xm + kLanczosG + 0.5;
  return kHalfLogTwoPi + (xm + 0.5) * std::log(t) - t + std::log(acc);
}

// sin(pi x) with the argument reduced exactly to [0, 2).
double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0.0) r += 2.0;
  double sign = 1.0;
  if (r >= 1.0) {
    r -= 1.0;
    sign = -1.0;
  }
  if (r > 0.5) r = 1.0 - r;
  return sign * std::sin(std::numbers::pi * r);
}

std::string fmt(double v) { return std::to_string(v); }

}  // namespace

SignedLogValue::SignedLogValue(int sign, double log_magnitude)
    : sign_(sign), log_magnitude_(sign == 0 ? 0.0 : log_magnitude) {
  if (sign < -1 || sign > 1) throw DomainError("SignedLogValue: sign must be -1, 0 or +1");
}

SignedLogValue SignedLogValue::from_value(double v) {
  if (!std::isfinite(v)) throw DomainError("SignedLogValue: non-finite value");
  if (v == 0.0) return zero();
  return {v > 0.0 ? 1 : -1, std::log(std::fabs(v))};
}

double SignedLogValue::value() const {
  if (sign_ == 0) return 0.0;
  return static_cast<double>(sign_) * std::exp(log_magnitude_);
}

SignedLogValue SignedLogValue::operator*(const SignedLogValue& o) const {
  if (is_zero() || o.is_zero()) return zero();
  return {sign_ * o.sign_, log_magnitude_ + o.log_magnitude_};
}

SignedLogValue SignedLogValue::operator/(const SignedLogValue& o) const {
  if (o.is_zero()) throw DomainError("SignedLogValue: division by zero");
  if (is_zero()) return zero();
  return {sign_ * o.sign_, log_magnitude_ - o.log_magnitude_};
}

bool is_gamma_pole(double z) {
  const double n = std::round(z);
  return n <= 0.0 && std::fabs(z - n) <= kPoleTolerance;
}

SignedLogValue log_gamma_signed(double x) {
  if (!std::isfinite(x)) throw DomainError("log_gamma_signed: non-finite argument");
  if (is_gamma_pole(x)) throw PoleError("log_gamma_signed: pole at " + fmt(x));
  if (x >= 0.5) return {1, log_gamma_positive(x)};
  // Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
  const double s = sin_pi(x);
  return {s > 0.0 ? 1 : -1,
          std::log(std::numbers::pi) - std::log(std::fabs(s)) - log_gamma_positive(1.0 - x)};
}

SignedLogValue gamma_ratio(double p, double q) {
  if (!std::isfinite(p) || !std::isfinite(q)) throw DomainError("gamma_ratio: non-finite argument");
  const bool p_pole = is_gamma_pole(p);
  const bool q_pole = is_gamma_pole(q);
  if (p_pole && q_pole) {
    // Gamma(-m + e) / Gamma(-n + e) -> (-1)^(n-m) n!/m!
    const auto m = static_cast<long long>(-std::round(p));
    const auto n = static_cast<long long>(-std::round(q));
    const int sign = ((n - m) % 2 == 0) ? 1 : -1;
    return {sign, log_gamma_positive(static_cast<double>(n) + 1.0) -
                      log_gamma_positive(static_cast<double>(m) + 1.0)};
  }
  if (q_pole) return SignedLogValue::zero();
  if (p_pole) {
    throw IndeterminateError("gamma_ratio: numerator Gamma(" + fmt(p) + ") is at a pole");
  }
  if (p == q) return {1, 0.0};
  if (p >= kStirlingThreshold && q >= kStirlingThreshold) {
    // (p-1/2) ln p - (q-1/2) ln q regrouped so the large logarithms cancel analytically.
    const double d = p - q;
    const double log_ratio = (q - 0.5) * std::log1p(d / q) + d * std::log(p) - d +
                             stirling_tail(p) - stirling_tail(q);
    return {1, log_ratio};
  }
  return log_gamma_signed(p) / log_gamma_signed(q);
}

double h_factorial_steps(double steps, double y, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("h_factorial: h must be positive");
  if (!std::isfinite(steps) || !std::isfinite(y)) {
    throw DomainError("h_factorial: non-finite argument");
  }
  if (y == 0.0) return 1.0;

  const double p = steps + 1.0;
  const double q = p - y;
  const bool regular = !is_gamma_pole(p) && !is_gamma_pole(q);

  // Integer exponents reduce to finite products.
  if (regular && y == std::round(y) && std::fabs(y) <= 64.0) {
    const int n = static_cast<int>(y);
    double prod = 1.0;
    if (n > 0) {
      for (int i = 0; i < n; ++i) prod *= (steps - i) * h;
      return prod;
    }
    for (int i = 1; i <= -n; ++i) prod *= (steps + i) * h;
    return 1.0 / prod;
  }

  const SignedLogValue r = gamma_ratio(p, q);
  if (r.is_zero()) return 0.0;
  return static_cast<double>(r.sign()) * std::exp(r.log_magnitude() + y * std::log(h));
}

double h_factorial(double x, double y, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("h_factorial: h must be positive");
  return h_factorial_steps(x / h, y, h);
}

double h_factorial_limit_error(double x, double y, double h) {
  if (!(x >= 0.0)) throw DomainError("h_factorial_limit_error: x must be nonnegative");
  if (x == 0.0 && y < 0.0) throw DomainError("h_factorial_limit_error: 0^y undefined for y < 0");
  return std::fabs(h_factorial(x, y, h) - std::pow(x, y));
}

}  // namespace frach
