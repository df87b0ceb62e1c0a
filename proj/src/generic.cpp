#include "ssae/generic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/numeric/odeint.hpp>

#include "ssae/errors.hpp"

namespace ssae::generic {

namespace odeint = boost::numeric::odeint;

namespace {
constexpr double kOdeRel = 1e-12;
constexpr double kOdeAbs = 1e-300;
constexpr int kMaxTerms = 400;

int sgn(double v) { return (v > 0) - (v < 0); }

double gap(const CustomPotential& pot) { return pot.frobenius.s1 - pot.frobenius.s2; }

double kappa2(const CustomPotential& pot, double E, double x) {
  return 2.0 * pot.m / (pot.hbar * pot.hbar) * (pot.v(x) - E);
}

struct Exponents {
  double s1, s2;
  int integer_gap;  // 0 when s1 - s2 is not an integer
};

Exponents exponents_of(double q0) {
  double disc = 0.25 + q0;
  if (!(disc > 0.0)) throw SeriesFailure("frobenius: q0 <= -1/4 gives repeated or complex exponents");
  double r = std::sqrt(disc);
  Exponents e{0.5 + r, 0.5 - r, 0};
  double d = e.s1 - e.s2;
  if (std::abs(d - std::round(d)) < 1e-12) e.integer_gap = int(std::round(d));
  return e;
}

// Frobenius coefficients for x^2 y'' = p(x) y, p = q - k^2 x^2.
struct Series {
  Exponents ex;
  std::vector<double> a, b;  // F1 = x^s1 sum a_n x^n, G = x^s2 sum b_n x^n
  double C = 0.0;            // F2 = C F1 ln x + G
};

Series build_series(const CustomPotential& pot, double E, int nterms) {
  std::vector<double> p(nterms + 3, 0.0);
  for (std::size_t j = 0; j < pot.q.size() && int(j) < nterms + 3; ++j) p[j] = pot.q[j];
  p[2] -= 2.0 * pot.m * E / (pot.hbar * pot.hbar);
  Series s;
  s.ex = exponents_of(p[0]);
  double q0 = p[0], s1 = s.ex.s1, s2 = s.ex.s2;
  int N = s.ex.integer_gap;
  s.a.assign(nterms, 0.0);
  s.b.assign(nterms, 0.0);
  s.a[0] = s.b[0] = 1.0;
  for (int n = 1; n < nterms; ++n) {
    double ra = 0.0, rb = 0.0;
    for (int j = 1; j <= n; ++j) {
      ra += p[j] * s.a[n - j];
      rb += p[j] * s.b[n - j];
    }
    s.a[n] = ra / ((n + s1) * (n + s1 - 1.0) - q0);
    if (N > 0 && n == N) {
      s.C = rb / (2.0 * s1 - 1.0);
      s.b[n] = 0.0;
      continue;
    }
    if (N > 0 && n > N) rb -= s.C * s.a[n - N] * (2.0 * (n + s2) - 1.0);
    s.b[n] = rb / ((n + s2) * (n + s2 - 1.0) - q0);
  }
  return s;
}

// sum c_n x^n and sum c_n (n + s) x^n; false if the tail has not died out
bool eval_series(const std::vector<double>& c, double s, double x, double& v, double& dv) {
  v = dv = 0.0;
  double xn = 1.0, tail = 0.0;
  int n = int(c.size());
  for (int i = 0; i < n; ++i) {
    double t = c[i] * xn;
    v += t;
    dv += t * (i + s);
    if (i >= n - 4) tail = std::max(tail, std::abs(t) * (1.0 + std::abs(i + s)));
    xn *= x;
  }
  double scale = std::max(std::abs(v), std::abs(dv));
  return tail <= 1e-16 * std::max(scale, 1e-300) || tail == 0.0;
}


template <class State, class Obs>
void integrate(const CustomPotential& pot, double E, State& y, double x0, double x1, Obs obs) {
  if (x0 == x1) return;
  auto rhs = [&](const State& s, State& d, double x) {
    double k2 = kappa2(pot, E, x);
    for (std::size_t i = 0; i + 1 < s.size(); i += 2) {
      d[i] = s[i + 1];
      d[i + 1] = k2 * s[i];
    }
  };
  auto stepper = odeint::make_controlled(kOdeAbs, kOdeRel, odeint::runge_kutta_fehlberg78<State>());
  double h0 = 1e-3 * (x1 - x0);
  try {
    odeint::integrate_adaptive(stepper, rhs, y, x0, x1, h0, obs);
  } catch (const std::exception& e) {
    throw StepFailure(std::string("generic: integration failed: ") + e.what());
  }
  for (double v : y)
    if (!std::isfinite(v)) throw StepFailure("generic: integration produced a non-finite value");
}

struct MatchPoints {
  double x_match;
  double x_max;
};

// Walk outward on a geometric grid.  The matching point sits at the outer
// classical turning point (or one decay length out when there is no
// allowed region); the outer point is 30 e-folds of the decaying WKB
// solution beyond it.
MatchPoints choose_points(const CustomPotential& pot, double E, double x0, double x_max_fixed) {
  constexpr double kFold = 30.0;
  double x = x0, k_prev = std::sqrt(std::max(kappa2(pot, E, x), 0.0));
  double cum = 0.0, cum_m = 0.0, x_m = -1.0;
  bool allowed = kappa2(pot, E, x) <= 0.0;
  double x_t = allowed ? x : -1.0;
  for (int i = 0; i < 40000; ++i) {
    double xn = x * 1.01;
    if (x_max_fixed > 0.0 && xn >= x_max_fixed) xn = x_max_fixed;
    double k2 = kappa2(pot, E, xn);
    double k = std::sqrt(std::max(k2, 0.0));
    cum += 0.5 * (k + k_prev) * (xn - x);
    if (k2 <= 0.0) {
      x_t = xn;
      x_m = -1.0;
    } else if (x_m < 0.0 && (x_t > 0.0 || cum >= 1.0)) {
      x_m = x_t > 0.0 ? x_t : xn;
      cum_m = x_t > 0.0 ? cum - 0.5 * (k + k_prev) * (xn - x) : cum;
    }
    x = xn;
    k_prev = k;
    if (x_max_fixed > 0.0 && x >= x_max_fixed) {
      if (x_m < 0.0 || cum - cum_m < 10.0)
        throw NoDecaySeparation("generic: decaying and growing solutions not separated at lp_check_x");
      return {x_m, x};
    }
    if (x_m > 0.0 && cum - cum_m >= kFold) return {x_m, x};
    if (x > 1e8) break;
  }
  throw NoDecaySeparation("generic: no decaying solution found (energy in the continuum?)");
}
}  // namespace

void CustomPotential::validate() const {
  if (!v) throw ConfigError("generic: potential has no V(x)");
  if (!(hbar > 0.0) || !(m > 0.0)) throw ConfigError("generic: hbar and m must be positive");
  if (!(eps > 0.0)) throw ConfigError("generic: eps must be positive");
  if (q.empty()) throw ConfigError("generic: Frobenius coefficients q are required");
  for (int i = 1; i <= 50; ++i) {
    double x = 0.1 * i;
    double a = v(x), b = v(-x);
    if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a))) throw ConfigError("generic: V is not parity invariant");
  }
  Exponents e = exponents_of(q[0]);
  if (std::abs(e.s1 - frobenius.s1) > 1e-8 || std::abs(e.s2 - frobenius.s2) > 1e-8)
    throw SeriesFailure("generic: declared exponents do not solve s(s-1) = q0");
  if (!(e.s2 > -0.5)) throw SeriesFailure("generic: s2 <= -1/2, the origin is not limit-circle");
  Series s = build_series(*this, 0.0, 4);
  bool has_log = s.C != 0.0;
  if (has_log != frobenius.log_flag) throw SeriesFailure("generic: declared log_flag does not match the potential");
}

Seed frobenius_start(const CustomPotential& pot, double E, double eps) {
  Series s = build_series(pot, E, kMaxTerms);
  for (int attempt = 0; attempt < 60; ++attempt, eps *= 0.5) {
    double a, da, b, db;
    if (!eval_series(s.a, s.ex.s1, eps, a, da) || !eval_series(s.b, s.ex.s2, eps, b, db)) continue;
    double p1 = std::pow(eps, s.ex.s1), p2 = std::pow(eps, s.ex.s2);
    Seed sd;
    sd.x = eps;
    sd.f1 = p1 * a;
    sd.df1 = p1 / eps * da;
    double g = p2 * b, dg = p2 / eps * db;
    sd.f2 = s.C * sd.f1 * std::log(eps) + g;
    sd.df2 = s.C * (sd.df1 * std::log(eps) + sd.f1 / eps) + dg;
    return sd;
  }
  throw SeriesFailure("frobenius_start: series did not converge");
}

HalfLineSolution integrate_halfline(const CustomPotential& pot, double E, double x0, double psi0, double dpsi0,
                                    double x1) {
  HalfLineSolution sol{E, {}};
  std::array<double, 2> y{psi0, dpsi0};
  sol.samples.push_back({x0, psi0, dpsi0});
  integrate(pot, E, y, x0, x1, [&](const std::array<double, 2>& s, double x) {
    if (x != x0) sol.samples.push_back({x, s[0], s[1]});
  });
  return sol;
}

double ReferenceModes::wronskian(const CustomPotential& pot) const { return -gap(pot) * R.determinant(); }

ReferenceModes default_modes(const CustomPotential& pot, double E_ref) {
  ReferenceModes m;
  m.E_ref = E_ref;
  m.R << 1.0, 0.0, 0.0, -1.0 / gap(pot);
  return m;
}

std::pair<HalfLineSolution, HalfLineSolution> sample_reference_modes(const CustomPotential& pot,
                                                                     const ReferenceModes& modes, double x_max) {
  Seed sd = frobenius_start(pot, modes.E_ref, pot.eps);
  const auto& R = modes.R;
  std::array<double, 4> y{R(0, 0) * sd.f1 + R(0, 1) * sd.f2, R(0, 0) * sd.df1 + R(0, 1) * sd.df2,
                          R(1, 0) * sd.f1 + R(1, 1) * sd.f2, R(1, 0) * sd.df1 + R(1, 1) * sd.df2};
  HalfLineSolution a{modes.E_ref, {}}, b{modes.E_ref, {}};
  integrate(pot, modes.E_ref, y, sd.x, x_max, [&](const std::array<double, 4>& s, double x) {
    a.samples.push_back({x, s[0], s[1]});
    b.samples.push_back({x, s[2], s[3]});
  });
  return {a, b};
}

DecayMatch decay_match(const CustomPotential& pot, double E, double x_max) {
  Seed sd = frobenius_start(pot, E, pot.eps);
  double fixed = x_max > 0.0 ? x_max : pot.lp_check_x;
  MatchPoints mp = choose_points(pot, E, sd.x, fixed);

  std::array<double, 4> f{sd.f1, sd.df1, sd.f2, sd.df2};
  integrate(pot, E, f, sd.x, mp.x_match, [](const std::array<double, 4>&, double) {});

  // WKB-decaying start: D'/D = -kappa - kappa'/(2 kappa)
  double xm = mp.x_max, h = 1e-5 * xm;
  double k2 = kappa2(pot, E, xm);
  double dk2 = (kappa2(pot, E, xm + h) - kappa2(pot, E, xm - h)) / (2.0 * h);
  double k = std::sqrt(k2);
  std::array<double, 2> d{1.0, -k - dk2 / (4.0 * k2)};
  integrate(pot, E, d, xm, mp.x_match, [](const std::array<double, 2>&, double) {});

  double w12 = f[0] * f[3] - f[1] * f[2];
  double wd2 = d[0] * f[3] - d[1] * f[2];
  double w1d = f[0] * d[1] - f[1] * d[0];
  return {wd2 / w12, w1d / w12, mp.x_match, mp.x_max};
}

double decay_ratio(const CustomPotential& pot, double E, double x_max) {
  DecayMatch dm = decay_match(pot, E, x_max);
  if (dm.A == 0.0) return std::numeric_limits<double>::infinity();
  return dm.B / dm.A;
}

BoundaryData boundary_data(const CustomPotential& pot, double E, const ReferenceModes& modes) {
  DecayMatch dm = decay_match(pot, E);
  // W[F1, F2]_{+0} = -(s1 - s2) for Frobenius solutions of any two energies
  double d = gap(pot);
  const auto& R = modes.R;
  double P = -dm.A * R(0, 1) * d + dm.B * R(0, 0) * d;
  double Q = -dm.A * R(1, 1) * d + dm.B * R(1, 0) * d;
  double n = std::hypot(P, Q);
  return {P / n, Q / n};
}

double xi_of_energy(const CustomPotential& pot, double E, const ReferenceModes& modes) {
  BoundaryData bd = boundary_data(pot, E, modes);
  if (bd.P == 0.0) throw PoleError("generic.xi_of_energy: E is a pole of xi");
  return bd.Q / bd.P;
}

namespace {
struct Grid {
  std::vector<double> E;
  std::vector<BoundaryData> bd;
};

Grid make_grid(const CustomPotential& pot, const ReferenceModes& modes, const SpectrumOptions& opt, int n) {
  auto [lo, hi] = opt.window;
  if (!(lo < hi)) throw ConfigError("generic: empty energy window");
  if (opt.log_spacing && !(hi < 0.0)) throw ConfigError("generic: log spacing needs a window below zero");
  Grid g;
  for (int i = 0; i <= n; ++i) {
    double E = opt.log_spacing ? -std::exp(std::log(-lo) + (std::log(-hi) - std::log(-lo)) * i / n)
                               : lo + (hi - lo) * i / n;
    g.E.push_back(E);
    g.bd.push_back(boundary_data(pot, E, modes));
  }
  return g;
}

std::vector<double> grid_roots(const Grid& g, const std::function<double(const BoundaryData&)>& f,
                               const std::function<double(double)>& fe, double abs_tol) {
  BisectOptions bo;
  bo.rel_tol = 1e-12;
  bo.abs_tol = abs_tol;
  std::vector<double> roots;
  double prev = f(g.bd[0]);
  for (std::size_t i = 1; i < g.E.size(); ++i) {
    double cur = f(g.bd[i]);
    if (cur == 0.0)
      roots.push_back(g.E[i]);
    else if (prev != 0.0 && sgn(prev) != sgn(cur))
      roots.push_back(bisect(fe, g.E[i - 1], g.E[i], prev, cur, bo));
    prev = cur;
  }
  return roots;
}

// roots closer than two local grid spacings hint that a pair may hide in one cell
bool crowded(std::vector<double> r, const Grid& g) {
  std::sort(r.begin(), r.end());
  for (std::size_t i = 1; i < r.size(); ++i) {
    auto it = std::upper_bound(g.E.begin(), g.E.end(), r[i]);
    std::size_t k = std::clamp<std::size_t>(it - g.E.begin(), 1, g.E.size() - 1);
    if (r[i] - r[i - 1] < 2.0 * (g.E[k] - g.E[k - 1])) return true;
  }
  return false;
}

// near-zero roots need an absolute floor; a log grid never reaches zero
double root_abs_tol(const SpectrumOptions& opt) {
  if (opt.log_spacing) return 0.0;
  return 1e-13 * std::max(std::abs(opt.window.first), std::abs(opt.window.second));
}

// roots_of(grid) -> (crowded, result); the grid is doubled up to twice
template <class Roots>
auto with_refinement(const CustomPotential& pot, const ReferenceModes& modes, const SpectrumOptions& opt,
                     Roots roots_of) {
  int n = std::max(opt.grid, 8);
  for (int level = 0;; ++level, n *= 2) {
    auto r = roots_of(make_grid(pot, modes, opt, n));
    if (level == 2 || !r.first) return r.second;
  }
}
}  // namespace

SpectrumResult spectrum(const CustomPotential& pot, const ExtensionSpec& spec, const ReferenceModes& modes,
                        const SpectrumOptions& opt) {
  pot.validate();
  spec.validate();
  if (opt.count < 1) throw ConfigError("generic: count must be >= 1");
  double abs_tol = root_abs_tol(opt);
  bool both = std::abs(spec.theta_plus - spec.theta_minus) < 1e-12;

  auto roots_of = [&](const Grid& g) {
    std::vector<BranchRoot> out;
    bool crowd = false;
    auto branch = [&](double theta, Branch br) {
      double s = std::sin(0.5 * theta), c = spec.L0 * std::cos(0.5 * theta);
      auto f = [s, c](const BoundaryData& b) { return s * b.P + c * b.Q; };
      auto fe = [&](double E) { return f(boundary_data(pot, E, modes)); };
      auto r = grid_roots(g, f, fe, abs_tol);
      crowd = crowd || crowded(r, g);
      for (double E : r) out.push_back({E, std::nullopt, br});
    };
    if (both) {
      branch(spec.theta_plus, Branch::both);
    } else {
      branch(spec.theta_plus, Branch::plus);
      branch(spec.theta_minus, Branch::minus);
    }
    return std::make_pair(crowd, out);
  };
  auto found = with_refinement(pot, modes, opt, roots_of);
  auto same = [](double x, double y) { return std::abs(x - y) <= 1e-8 * std::max(1.0, std::abs(x)); };
  SpectrumResult res;
  res.model = pot.name;
  res.extension = spec;
  res.levels = take_lowest(merge_levels(found, same), opt.count, "generic.spectrum");
  return res;
}

std::vector<double> spectrum_matrix(const CustomPotential& pot, const ExtensionMatrix& u, double L0,
                                    const ReferenceModes& modes, const SpectrumOptions& opt) {
  pot.validate();
  if (!(L0 > 0.0)) throw ConfigError("generic: L0 must be positive");
  const Mat2& U = u.matrix();
  Mat2 id = Mat2::Identity();
  Mat2 A = U - id, B = Complex(0.0, L0) * (U + id);
  // det M carries the constant phase sqrt(det U); removing it leaves a real function
  Complex phase = std::exp(Complex(0.0, -0.5 * std::arg(U.determinant())));
  auto f = [&](const BoundaryData& b) { return ((b.P * A + b.Q * B).determinant() * phase).real(); };
  auto fe = [&](double E) { return f(boundary_data(pot, E, modes)); };
  double abs_tol = root_abs_tol(opt);
  auto roots_of = [&](const Grid& g) {
    auto r = grid_roots(g, f, fe, abs_tol);
    return std::make_pair(crowded(r, g), r);
  };
  auto r = with_refinement(pot, modes, opt, roots_of);
  std::sort(r.begin(), r.end());
  if (int(r.size()) < opt.count)
    throw WindowTooSmall("generic.spectrum_matrix: found " + std::to_string(r.size()) + " levels, " +
                         std::to_string(opt.count) + " requested");
  r.resize(opt.count);
  return r;
}

double probability_current(Complex psi, Complex dpsi, double hbar, double m) {
  return hbar / m * (std::conj(psi) * dpsi).imag();
}

}  // namespace ssae::generic
