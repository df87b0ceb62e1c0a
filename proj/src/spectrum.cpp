#include "ssae/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "ssae/errors.hpp"

namespace ssae {

namespace {
int sgn(double v) { return (v > 0) - (v < 0); }
}  // namespace

const char* branch_name(Branch b) {
  switch (b) {
    case Branch::plus:
      return "+";
    case Branch::minus:
      return "-";
    case Branch::both:
      return "+-";
  }
  return "?";
}

std::vector<Level> merge_levels(std::vector<BranchRoot> roots,
                                const std::function<bool(double, double)>& same) {
  std::sort(roots.begin(), roots.end(), [](const BranchRoot& a, const BranchRoot& b) { return a.energy < b.energy; });
  std::vector<Level> out;
  for (const auto& r : roots) {
    if (!out.empty() && same(out.back().energy, r.energy)) {
      Level& l = out.back();
      bool dup = (r.branch == l.branch) || l.branch == Branch::both;
      if (!dup) {
        l.branch = Branch::both;
        l.degeneracy = 2;
      }
      continue;
    }
    Level l;
    l.energy = r.energy;
    l.lambda = r.lambda;
    l.branch = r.branch;
    l.degeneracy = r.branch == Branch::both ? 2 : 1;
    out.push_back(l);
  }
  return out;
}

std::vector<Level> take_lowest(std::vector<Level> levels, int count, const std::string& what) {
  if (int(levels.size()) < count)
    throw WindowTooSmall(what + ": found " + std::to_string(levels.size()) + " levels, " + std::to_string(count) +
                         " requested");
  levels.resize(count);
  return levels;
}

double bisect(const std::function<double(double)>& f, double a, double b, double fa, double fb,
              const BisectOptions& opt) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  for (int i = 0; i < opt.max_iter; ++i) {
    double mid = 0.5 * (a + b);
    if (std::abs(b - a) <= opt.rel_tol * std::abs(mid) + opt.abs_tol || mid == a || mid == b) return mid;
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if (sgn(fm) == sgn(fa)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
      fb = fm;
    }
  }
  return 0.5 * (a + b);
}

std::vector<double> scan_roots(const std::function<double(double)>& f, double a, double b, int n,
                               int lim_a, int lim_b, const BisectOptions& opt) {
  std::vector<double> t(n), v(n);
  for (int i = 0; i < n; ++i) {
    t[i] = a + (b - a) * (i + 1) / double(n + 1);
    v[i] = f(t[i]);
  }
  std::vector<double> roots;
  // Walk from an interior sample towards an end until f shows the limit sign.
  auto edge = [&](double inner, double finner, double end, int lim) {
    double x = inner;
    for (int j = 0; j < 80; ++j) {
      x = end + 0.5 * (x - end);
      if (x == end) break;
      double fx = f(x);
      if (sgn(fx) == lim) {
        roots.push_back(x < inner ? bisect(f, x, inner, fx, finner, opt) : bisect(f, inner, x, finner, fx, opt));
        return;
      }
    }
  };
  if (lim_a != 0 && sgn(v.front()) != lim_a && v.front() != 0.0) edge(t.front(), v.front(), a, lim_a);
  for (int i = 0; i + 1 < n; ++i) {
    if (v[i] == 0.0) {
      roots.push_back(t[i]);
    } else if (sgn(v[i]) != sgn(v[i + 1]) && v[i + 1] != 0.0) {
      roots.push_back(bisect(f, t[i], t[i + 1], v[i], v[i + 1], opt));
    }
  }
  if (v.back() == 0.0) roots.push_back(t.back());
  if (lim_b != 0 && sgn(v.back()) != lim_b && v.back() != 0.0) edge(t.back(), v.back(), b, lim_b);
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<double> scan_grid(const std::function<double(double)>& f, const std::vector<double>& grid,
                              const BisectOptions& opt) {
  std::vector<double> roots;
  if (grid.empty()) return roots;
  double prev = f(grid[0]);
  if (prev == 0.0) roots.push_back(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    double cur = f(grid[i]);
    if (cur == 0.0) {
      roots.push_back(grid[i]);
    } else if (prev != 0.0 && sgn(prev) != sgn(cur)) {
      roots.push_back(bisect(f, grid[i - 1], grid[i], prev, cur, opt));
    }
    prev = cur;
  }
  return roots;
}

}  // namespace ssae
