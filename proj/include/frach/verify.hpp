#pragma once

// Identity sweeps behind `frach verify`. Each suite returns one row per
// configuration group; a row passes when its measured residual is within the
// pinned tolerance.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "frach/fracops.hpp"
#include "frach/grid.hpp"

namespace frach {

/// Deliberate corruptions used as negative controls.
enum class Fault {
  none,
  kernel,    // perturb one value of every constructed kernel solution
  parts,     // drop the correction term of summation by parts
  examples,  // perturb one interior value of every explicit minimizer
};

Fault parse_fault(std::string_view name);

struct VerifyOptions {
  int trials = 10;
  std::uint64_t seed = 42;
  Fault fault = Fault::none;
};

struct CheckRow {
  std::string suite;
  std::string config;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

std::vector<CheckRow> verify_exponents(const VerifyOptions& opt);
std::vector<CheckRow> verify_transfer(const VerifyOptions& opt);
std::vector<CheckRow> verify_parts(const VerifyOptions& opt);
std::vector<CheckRow> verify_kernel(const VerifyOptions& opt);
std::vector<CheckRow> verify_examples(const VerifyOptions& opt);

/// which: exponents | parts | kernel | transfer | examples | all
std::vector<CheckRow> run_verify(std::string_view which, const VerifyOptions& opt);

/// Solves "right difference of f = 0" for the unknowns f(a..b-h) with f(b) fixed,
/// by probing the linear operator and Gaussian elimination.
GridFunction right_kernel_by_linear_solve(const HGrid& grid, DiffOrder alpha, double f_b);

/// Uniform [-1, 1] values on the grid.
GridFunction random_grid_function(double origin, double h, std::size_t n, std::uint64_t seed);

}  // namespace frach
