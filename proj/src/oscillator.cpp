#include "ssae/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ssae/errors.hpp"
#include "ssae/specfun.hpp"

namespace ssae::oscillator {

namespace {
constexpr double kPoleTol = 1e-9;

int sgn(double v) { return (v > 0) - (v < 0); }

// distance of lambda from the lattice c + 2n, n >= 0 (infinite below c)
double lattice_distance(double lambda, double c) {
  if (lambda < c - 1.0) return HUGE_VAL;
  double n = std::max(0.0, std::round((lambda - c) / 2.0));
  return std::abs(lambda - c - 2.0 * n);
}

double xi_raw(double lambda, const OscillatorModel& model) {
  double c1 = model.c1(), c2 = model.c2();
  if (lambda < c2) {
    // both Gamma arguments positive: log form avoids overflow far below the spectrum
    double lr = std::lgamma(0.5 * (c1 - lambda)) - std::lgamma(0.5 * (c2 - lambda));
    return model.s() / (c2 - c1) * std::tgamma(c2) / std::tgamma(c1) * std::exp(lr);
  }
  Pencil p = xi_pencil(lambda, model);
  return p.num / p.den;
}
}  // namespace

void OscillatorModel::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw ConfigError("oscillator: omega must be positive");
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw ConfigError("oscillator: hbar must be positive");
  if (!(m > 0.0) || !std::isfinite(m)) throw ConfigError("oscillator: m must be positive");
  double q = 8.0 * m * g / (hbar * hbar);
  if (!(q > 0.0 && q < 3.0))
    throw CouplingOutOfRange("oscillator: need 0 < 8 m g / hbar^2 < 3, got " + std::to_string(q));
}

OscillatorModel OscillatorModel::from_a(double a, double omega, double hbar, double m) {
  if (!(a > 0.5 && a < 1.0)) throw CouplingOutOfRange("oscillator: a must lie in (1/2, 1)");
  OscillatorModel mod{omega, (4.0 * a * a - 1.0) * hbar * hbar / (8.0 * m), hbar, m};
  mod.validate();
  return mod;
}

double a_param(const OscillatorModel& model) {
  model.validate();
  return 0.5 * std::sqrt(1.0 + 8.0 * model.m * model.g / (model.hbar * model.hbar));
}

double OscillatorModel::c1() const { return 1.0 + a_param(*this); }
double OscillatorModel::c2() const { return 1.0 - a_param(*this); }

Pencil xi_pencil(double lambda, const OscillatorModel& model) {
  double c1 = model.c1(), c2 = model.c2();
  double den = (c1 - c2) * std::tgamma(c1) * specfun::rgamma(0.5 * (c1 - lambda));
  double num = -model.s() * std::tgamma(c2) * specfun::rgamma(0.5 * (c2 - lambda));
  return {den, num};
}

double xi_bound(double lambda, const OscillatorModel& model) {
  if (lattice_distance(lambda, model.c1()) < kPoleTol)
    throw PoleError("oscillator.xi_bound: lambda at a pole c1 + 2n");
  return xi_raw(lambda, model);
}

std::vector<double> branch_roots(const OscillatorModel& model, double theta, double L0, int count) {
  double c1 = model.c1(), c2 = model.c2();
  double s = std::sin(0.5 * theta), c = std::cos(0.5 * theta);
  std::vector<double> out;
  if (std::abs(c) < 1e-15) {
    for (int n = 0; n < count; ++n) out.push_back(c1 + 2.0 * n);
    return out;
  }
  if (std::abs(s) < 1e-15) {
    for (int n = 0; n < count; ++n) out.push_back(c2 + 2.0 * n);
    return out;
  }
  auto w = [&](double l) { return s + L0 * c * xi_raw(l, model); };
  // xi -> +inf approaching a pole from below, -inf from above and as lambda -> -inf
  int sc = sgn(c);
  BisectOptions bo;
  bo.rel_tol = 5e-13;
  bo.abs_tol = 1e-15;

  double lo = c2 - 1.0;
  for (int i = 0; i < 200 && sgn(w(lo)) != -sc; ++i) lo = c1 - 2.0 * (c1 - lo);
  auto r = scan_roots(w, lo, c1, 64, -sc, sc, bo);
  out.insert(out.end(), r.begin(), r.end());
  for (int n = 0; int(out.size()) < count && n < count + 2; ++n) {
    r = scan_roots(w, c1 + 2.0 * n, c1 + 2.0 * (n + 1), 64, -sc, sc, bo);
    out.insert(out.end(), r.begin(), r.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

SpectrumResult bound_spectrum(const OscillatorModel& model, const ExtensionSpec& spec, int count) {
  model.validate();
  spec.validate();
  if (count < 1) throw ConfigError("oscillator: count must be >= 1");
  std::vector<BranchRoot> roots;
  double hw = model.hbar * model.omega;
  auto add = [&](double theta, Branch br) {
    for (double l : branch_roots(model, theta, spec.L0, count)) roots.push_back({l * hw, l, br});
  };
  if (std::abs(spec.theta_plus - spec.theta_minus) < 1e-12) {
    add(spec.theta_plus, Branch::both);
  } else {
    add(spec.theta_plus, Branch::plus);
    add(spec.theta_minus, Branch::minus);
  }
  auto same = [hw](double x, double y) { return std::abs(x - y) <= 1e-9 * hw; };
  SpectrumResult res;
  res.model = "oscinv";
  res.extension = spec;
  res.levels = take_lowest(merge_levels(roots, same), count, "oscillator.bound_spectrum");
  return res;
}

SpectrumResult free_case_spectrum(const OscillatorModel& model, int count) {
  return bound_spectrum(model, decompose(ExtensionMatrix::sigma1(), 1.0), count);
}

}  // namespace ssae::oscillator
