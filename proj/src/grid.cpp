#include "frach/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace frach {

namespace {

constexpr double kOriginTolerance = 1e-12;   // in units of h
constexpr double kStepTolerance = 1e-12;     // relative
constexpr double kCsvStepTolerance = 1e-10;  // relative

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_same_domain(const GridFunction& f, const GridFunction& g) {
  if (f.size() != g.size() || std::fabs(f.h() - g.h()) > kStepTolerance * f.h() ||
      std::fabs(f.origin() - g.origin()) > kOriginTolerance * f.h()) {
    throw DomainError("grid functions live on different domains");
  }
}

double parse_double(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError("csv line " + std::to_string(line) + ": not a number: '" + s + "'");
  }
}

}  // namespace

HGrid::HGrid(double a, double h, int k) : a_(a), h_(h), k_(k) {
  if (!std::isfinite(a) || !std::isfinite(h) || !(h > 0.0)) {
    throw DomainError("HGrid: need finite a and h > 0");
  }
  if (k < 2) throw DomainError("HGrid: need k >= 2");
}

GridFunction::GridFunction(double origin, double h, std::vector<double> values)
    : origin_(origin), h_(h), values_(std::move(values)) {
  if (!std::isfinite(origin) || !std::isfinite(h) || !(h > 0.0)) {
    throw DomainError("GridFunction: need finite origin and h > 0");
  }
  if (values_.empty()) throw DomainError("GridFunction: need at least one value");
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("GridFunction: non-finite value");
  }
}

GridFunction GridFunction::slice(std::size_t first, std::size_t count) const {
  if (count == 0 || first + count > size()) throw DomainError("GridFunction::slice out of range");
  return {abscissa(first), h_,
          std::vector<double>(values_.begin() + static_cast<std::ptrdiff_t>(first),
                              values_.begin() + static_cast<std::ptrdiff_t>(first + count))};
}

GridFunction GridFunction::with_origin(double origin) const { return {origin, h_, values_}; }

GridFunction GridFunction::reflect() const {
  return {-last_abscissa(), h_, std::vector<double>(values_.rbegin(), values_.rend())};
}

double GridFunction::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::fabs(v));
  return m;
}

GridFunction operator+(const GridFunction& f, const GridFunction& g) {
  require_same_domain(f, g);
  std::vector<double> v(f.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f[j] + g[j];
  return {f.origin(), f.h(), std::move(v)};
}

GridFunction operator-(const GridFunction& f, const GridFunction& g) {
  require_same_domain(f, g);
  std::vector<double> v(f.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f[j] - g[j];
  return {f.origin(), f.h(), std::move(v)};
}

GridFunction operator*(double s, const GridFunction& f) {
  std::vector<double> v(f.values().begin(), f.values().end());
  for (double& x : v) x *= s;
  return {f.origin(), f.h(), std::move(v)};
}

GridFunction sample(const std::function<double(double)>& f, double origin, double h, std::size_t n) {
  if (n == 0) throw DomainError("sample: need n >= 1");
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    v[j] = f(origin + static_cast<double>(j) * h);
    if (!std::isfinite(v[j])) throw DomainError("sample: non-finite value");
  }
  return {origin, h, std::move(v)};
}

GridFunction sample(const std::function<double(double)>& f, const HGrid& grid) {
  return sample(f, grid.a(), grid.h(), grid.size());
}

Overlap align(const GridFunction& f, const GridFunction& g) {
  const double h = f.h();
  if (std::fabs(f.h() - g.h()) > kStepTolerance * std::max(f.h(), g.h())) {
    throw StepMismatchError("align: steps differ");
  }
  const double offset = (g.origin() - f.origin()) / h;
  const double shift = std::round(offset);
  if (std::fabs(offset - shift) > kOriginTolerance) return {};
  const auto s = static_cast<long long>(shift);
  const auto nf = static_cast<long long>(f.size());
  const auto ng = static_cast<long long>(g.size());
  Overlap o;
  if (s >= 0) {
    if (s >= nf) return {};
    o.f_first = static_cast<std::size_t>(s);
    o.count = static_cast<std::size_t>(std::min(nf - s, ng));
  } else {
    if (-s >= ng) return {};
    o.g_first = static_cast<std::size_t>(-s);
    o.count = static_cast<std::size_t>(std::min(nf, ng + s));
  }
  return o;
}

void write_csv(std::ostream& out, const GridFunction& f) {
  out << "t,value\n";
  for (std::size_t j = 0; j < f.size(); ++j) {
    out << format17(f.abscissa(j)) << ',' << format17(f[j]) << '\n';
  }
}

void write_csv(const std::string& path, const GridFunction& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");
  write_csv(out, f);
  if (!out) throw FormatError("write to '" + path + "' failed");
}

GridFunction read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,value") throw FormatError("csv: expected header 't,value'");

  std::vector<double> ts;
  std::vector<double> vs;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw FormatError("csv line " + std::to_string(lineno) + ": expected two fields");
    }
    ts.push_back(parse_double(line.substr(0, comma), lineno));
    vs.push_back(parse_double(line.substr(comma + 1), lineno));
  }
  if (ts.size() < 2) throw FormatError("csv: need at least two rows to infer the step");

  const double h = (ts.back() - ts.front()) / static_cast<double>(ts.size() - 1);
  if (!(h > 0.0)) throw FormatError("csv: abscissae must be increasing");
  for (std::size_t j = 1; j < ts.size(); ++j) {
    if (std::fabs((ts[j] - ts[j - 1]) - h) > kCsvStepTolerance * h) {
      throw FormatError("csv: non-uniform step at row " + std::to_string(j + 1));
    }
  }
  try {
    return {ts.front(), h, std::move(vs)};
  } catch (const DomainError& e) {
    throw FormatError(std::string("csv: ") + e.what());
  }
}

GridFunction read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return read_csv(in);
}

}  // namespace frach
