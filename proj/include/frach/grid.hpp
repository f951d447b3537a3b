#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frach/errors.hpp"

namespace frach {

inline double sigma(double t, double h) { return t + h; }
inline double rho(double t, double h) { return t - h; }

/// Uniform grid {a, a+h, ..., a+kh} with k >= 2.
class HGrid {
 public:
  HGrid(double a, double h, int k);

  double a() const { return a_; }
  double h() const { return h_; }
  int k() const { return k_; }
  double b() const { return point(k_); }
  double point(int j) const { return a_ + j * h_; }
  std::size_t size() const { return static_cast<std::size_t>(k_) + 1; }

 private:
  double a_;
  double h_;
  int k_;
};

/// Real values on the abscissae origin + j*h, j = 0..n-1. The origin may sit off
/// the base grid by a real multiple of h (the shifted domains of fractional sums).
class GridFunction {
 public:
  GridFunction(double origin, double h, std::vector<double> values);

  double origin() const { return origin_; }
  double h() const { return h_; }
  std::size_t size() const { return values_.size(); }
  double abscissa(std::size_t j) const { return origin_ + static_cast<double>(j) * h_; }
  double last_abscissa() const { return abscissa(size() - 1); }
  double operator[](std::size_t j) const { return values_[j]; }
  double front() const { return values_.front(); }
  double back() const { return values_.back(); }
  std::span<const double> values() const { return values_; }

  /// Points [first, first + count) as a new function.
  GridFunction slice(std::size_t first, std::size_t count) const;
  /// Same values relabelled to a new origin.
  GridFunction with_origin(double origin) const;
  /// g(t) = f(-t).
  GridFunction reflect() const;

  double sup_norm() const;

 private:
  double origin_;
  double h_;
  std::vector<double> values_;
};

GridFunction operator+(const GridFunction& f, const GridFunction& g);
GridFunction operator-(const GridFunction& f, const GridFunction& g);
GridFunction operator*(double s, const GridFunction& f);

/// Values f(origin + j*h), j = 0..n-1.
GridFunction sample(const std::function<double(double)>& f, double origin, double h, std::size_t n);
GridFunction sample(const std::function<double(double)>& f, const HGrid& grid);

/// Index ranges on which two functions share abscissae.
struct Overlap {
  std::size_t f_first = 0;
  std::size_t g_first = 0;
  std::size_t count = 0;
  bool empty() const { return count == 0; }
  friend bool operator==(const Overlap&, const Overlap&) = default;
};

Overlap align(const GridFunction& f, const GridFunction& g);

// CSV: header "t,value", one row per point, 17 significant digits, LF endings.
void write_csv(std::ostream& out, const GridFunction& f);
void write_csv(const std::string& path, const GridFunction& f);
/// Rejects fewer than two rows and steps that deviate from uniform by more than 1e-10 relative.
GridFunction read_csv(std::istream& in);
GridFunction read_csv(const std::string& path);

}  // namespace frach
