#pragma once

// Spectrum containers and the bracketing/bisection helpers shared by the
// model solvers.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ssae/u2ext.hpp"

namespace ssae {

enum class Branch { plus, minus, both };

const char* branch_name(Branch b);

struct Level {
  double energy = 0.0;
  std::optional<double> lambda;  // dimensionless energy where the model has one
  Branch branch = Branch::plus;
  int degeneracy = 1;
};

struct SpectrumResult {
  std::string model;
  ExtensionSpec extension;
  std::vector<Level> levels;  // ascending energy
};

/// A root found on one branch before merging.
struct BranchRoot {
  double energy;
  std::optional<double> lambda;
  Branch branch;
};

/// Sorts, removes same-branch duplicates and merges coincident levels of
/// different branches into one level with degeneracy 2 (Branch::both).
std::vector<Level> merge_levels(std::vector<BranchRoot> roots,
                                const std::function<bool(double, double)>& same);

/// Keeps the lowest `count` levels; throws WindowTooSmall if fewer exist.
std::vector<Level> take_lowest(std::vector<Level> levels, int count, const std::string& what);

struct BisectOptions {
  double rel_tol = 5e-13;
  double abs_tol = 0.0;
  int max_iter = 200;
};

/// Bisection on [a, b] with f(a), f(b) of opposite sign.
double bisect(const std::function<double(double)>& f, double a, double b, double fa, double fb,
              const BisectOptions& opt = {});

/// Sign changes of f on the open interval (a, b) found on an n-point
/// interior grid.  lim_a / lim_b give the sign of f approached from inside
/// at each end (0 when unknown); a crossing next to an end is bracketed by
/// stepping geometrically towards that end until f takes the limit sign.
std::vector<double> scan_roots(const std::function<double(double)>& f, double a, double b, int n,
                               int lim_a, int lim_b, const BisectOptions& opt = {});

/// Sign changes on an explicit, increasing grid (no pole handling).
std::vector<double> scan_grid(const std::function<double(double)>& f, const std::vector<double>& grid,
                              const BisectOptions& opt = {});

}  // namespace ssae
