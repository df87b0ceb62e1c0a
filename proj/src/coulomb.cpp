#include "ssae/coulomb.hpp"

#include <algorithm>
#include <cmath>

#include "ssae/errors.hpp"
#include "ssae/specfun.hpp"

namespace ssae::coulomb {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kPoleTol = 1e-9;
const Complex kI{0.0, 1.0};

int sgn(double v) { return (v > 0) - (v < 0); }

bool near_positive_integer(double a, double tol) {
  if (a < 0.5) return false;
  return std::abs(a - std::round(a)) < tol;
}

bool same_theta(double a, double b) { return std::abs(a - b) < 1e-12; }

double xi_raw(double a, double b, const CoulombModel& model) {
  double bracket = std::log(a / b) - specfun::digamma(1.0 - a) + specfun::digamma(1.0 - b) + 0.5 / b - 0.5 / a;
  return model.xi_scale() * bracket;
}
}  // namespace

void CoulombModel::validate() const {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw ConfigError("coulomb: hbar must be positive");
  if (!(m > 0.0) || !std::isfinite(m)) throw ConfigError("coulomb: m must be positive");
  if (e2 == 0.0 || !std::isfinite(e2)) throw ConfigError("coulomb: e2 must be non-zero");
}

double alpha_of_energy(const CoulombModel& model, double E) {
  if (!(E < 0.0)) throw ConfigError("coulomb: bound energies must be negative");
  return model.e2 / model.hbar * std::sqrt(-model.m / (2.0 * E));
}

double energy_of_alpha(const CoulombModel& model, double alpha) {
  return -model.m * model.e2 * model.e2 / (2.0 * model.hbar * model.hbar * alpha * alpha);
}

BoundChannel bound_channel(const CoulombModel& model, double E) {
  return {E, alpha_of_energy(model, E), std::sqrt(-2.0 * model.m * E) / model.hbar};
}

ScatterChannel scatter_channel(const CoulombModel& model, double E_k) {
  if (!(E_k > 0.0)) throw ConfigError("coulomb: scattering energy must be positive");
  ScatterChannel ch;
  ch.E_k = E_k;
  ch.k = std::sqrt(2.0 * model.m * E_k) / model.hbar;
  ch.gamma = -model.e2 / model.hbar * std::sqrt(model.m / (2.0 * E_k));
  ch.eta0 = coulomb_phase(ch.gamma);
  return ch;
}

double default_bound_reference(const CoulombModel& model) {
  // alpha = 1/2 in magnitude, sign following e2
  return energy_of_alpha(model, 0.5);
}

double sigma_bound(const BoundChannel& ch) { return specfun::rgamma(1.0 - ch.alpha); }

double xi_bound(const BoundChannel& ch, double ref_E, const CoulombModel& model) {
  double a = ch.alpha;
  double b = alpha_of_energy(model, ref_E);
  if (near_positive_integer(a, kPoleTol)) throw PoleError("coulomb.xi_bound: alpha at a positive integer");
  if (near_positive_integer(b, kPoleTol)) throw PoleError("coulomb.xi_bound: reference beta at a positive integer");
  return xi_raw(a, b, model);
}

Pencil xi_pencil(const CoulombModel& model, double E, double ref_E) {
  double a = alpha_of_energy(model, E);
  double b = alpha_of_energy(model, ref_E);
  if (near_positive_integer(b, kPoleTol)) throw PoleError("coulomb.xi_pencil: reference beta at a positive integer");
  double sigma = specfun::rgamma(1.0 - a);
  double smooth = std::log(a / b) + specfun::digamma(1.0 - b) + 0.5 / b - 0.5 / a;
  double num = model.xi_scale() * (sigma * smooth - specfun::rgamma_times_digamma(1.0 - a));
  return {sigma, num};
}

std::vector<double> branch_roots(const CoulombModel& model, double theta, double L0, double ref_E,
                                 double alpha_lo, double alpha_hi, int subgrid) {
  double s = std::sin(0.5 * theta), c = std::cos(0.5 * theta);
  std::vector<double> alphas;
  bool attractive = model.e2 > 0.0;

  if (std::abs(c) < 1e-15) {
    // theta = pi: sigma = 0, alpha in Z+ (attractive only)
    if (attractive)
      for (int n = std::max(1, int(std::ceil(alpha_lo))); n < alpha_hi; ++n) alphas.push_back(n);
  } else {
    double beta = alpha_of_energy(model, ref_E);
    if (near_positive_integer(beta, kPoleTol)) throw PoleError("coulomb: reference beta at a positive integer");
    auto w = [&](double a) { return s + L0 * c * xi_raw(a, beta, model); };
    // Signs of w next to the singular points: xi -> +inf (scale>0) as alpha
    // approaches n from below, -inf from above; xi -> -sgn(scale) inf at 0.
    int sc = sgn(model.xi_scale()) * sgn(c);
    BisectOptions bo;
    bo.rel_tol = 5e-13;
    auto end_sign = [&](double a, bool is_left) -> int {
      if (a == 0.0) return -sc;
      if (attractive && near_positive_integer(a, 1e-12)) return is_left ? -sc : sc;
      return sgn(w(a));
    };
    std::vector<double> cuts{alpha_lo};
    if (attractive)
      for (int n = int(std::floor(alpha_lo)) + 1; n < alpha_hi; ++n)
        if (n > alpha_lo) cuts.push_back(n);
    cuts.push_back(alpha_hi);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      double a = cuts[i], b = cuts[i + 1];
      auto r = scan_roots(w, a, b, subgrid, end_sign(a, true), end_sign(b, false), bo);
      alphas.insert(alphas.end(), r.begin(), r.end());
    }
  }
  std::vector<double> energies;
  for (double a : alphas) energies.push_back(energy_of_alpha(model, a));
  std::sort(energies.begin(), energies.end());
  return energies;
}

SpectrumResult bound_spectrum(const CoulombModel& model, const ExtensionSpec& spec, const BoundOptions& opt) {
  model.validate();
  spec.validate();
  if (opt.count < 1) throw ConfigError("coulomb: count must be >= 1");
  double ref_E = opt.ref_E.value_or(default_bound_reference(model));
  alpha_of_energy(model, ref_E);  // validates sign

  double lo, hi;
  if (opt.window) {
    auto [e_lo, e_hi] = *opt.window;
    if (!(e_lo < e_hi && e_hi < 0.0)) throw ConfigError("coulomb: energy window must satisfy E_lo < E_hi < 0");
    double a1 = alpha_of_energy(model, e_lo), a2 = alpha_of_energy(model, e_hi);
    lo = std::min(a1, a2);
    hi = std::max(a1, a2);
  } else if (model.e2 > 0.0) {
    lo = 0.0;
    hi = opt.count + 2.0;
  } else {
    lo = -(opt.count + 2.0);
    hi = 0.0;
  }

  std::vector<BranchRoot> roots;
  auto add = [&](double theta, Branch br) {
    for (double E : branch_roots(model, theta, spec.L0, ref_E, lo, hi, opt.subgrid)) roots.push_back({E, std::nullopt, br});
  };
  if (same_theta(spec.theta_plus, spec.theta_minus)) {
    add(spec.theta_plus, Branch::both);
  } else {
    add(spec.theta_plus, Branch::plus);
    add(spec.theta_minus, Branch::minus);
  }
  auto same = [](double x, double y) { return std::abs(x - y) <= 1e-9 * std::max(std::abs(x), std::abs(y)); };
  SpectrumResult res;
  res.model = "coulomb";
  res.extension = spec;
  res.levels = take_lowest(merge_levels(roots, same), opt.count, "coulomb.bound_spectrum");
  return res;
}

double coulomb_phase(double gamma) {
  if (gamma == 0.0) return 0.0;
  return specfun::ln_gamma(Complex(1.0, gamma)).imag();
}

Complex rho_factor_complex(double ref_E, double E_k, const CoulombModel& model) {
  auto f = [&](double E) {
    Complex g = scatter_channel(model, E).gamma;
    return 2.0 * std::log(g) - specfun::digamma(1.0 - kI * g) - specfun::digamma(1.0 + kI * g);
  };
  if (ref_E == E_k) return 0.0;
  return model.m * model.e2 / (model.hbar * model.hbar) * (f(ref_E) - f(E_k));
}

double rho_factor(double ref_E, double E_k, const CoulombModel& model) {
  return rho_factor_complex(ref_E, E_k, model).real();
}

Complex omega_factor(const ScatterChannel& ch, double rho) {
  double x = 2.0 * kPi * ch.gamma;
  double modulus = x == 0.0 ? ch.k : ch.k * x / std::expm1(x);
  return {modulus, rho};
}

double chi_angle(double theta, double L0, Complex omega) {
  return -std::arg(std::sin(0.5 * theta) + kI * omega * L0 * std::cos(0.5 * theta));
}

ScatteringResult scattering(const CoulombModel& model, const ExtensionSpec& spec, double E_k,
                            std::optional<double> ref_E) {
  model.validate();
  spec.validate();
  ScatterChannel ch = scatter_channel(model, E_k);
  Complex omega = omega_factor(ch, rho_factor(ref_E.value_or(E_k), E_k, model));
  double cp = chi_angle(spec.theta_plus, spec.L0, omega);
  double cm = chi_angle(spec.theta_minus, spec.L0, omega);
  double d = cp - cm;
  Complex pre = -std::exp(kI * (2.0 * ch.eta0 + cp + cm));
  ScatteringResult r;
  r.k = ch.k;
  r.T = pre * kI * std::sin(d) * std::sin(spec.mu) * std::exp(-kI * spec.nu);
  r.R = pre * (std::cos(d) - kI * std::sin(d) * std::cos(spec.mu));
  r.unitarity_defect = std::abs(std::norm(r.T) + std::norm(r.R) - 1.0);
  return r;
}

ScatteringResult scattering_matrix_form(const CoulombModel& model, const ExtensionMatrix& u, double L0,
                                        double E_k, std::optional<double> ref_E) {
  model.validate();
  ScatterChannel ch = scatter_channel(model, E_k);
  Complex omega = omega_factor(ch, rho_factor(ref_E.value_or(E_k), E_k, model));
  const Mat2& U = u.matrix();
  Mat2 id = Mat2::Identity();
  Mat2 lhs = (U - id) - omega * L0 * (U + id);
  Mat2 rhs_m = (U - id) + std::conj(omega) * L0 * (U + id);
  Vec2 rhs = -std::exp(2.0 * kI * ch.eta0) * rhs_m.col(1);
  Vec2 x = lhs.fullPivLu().solve(rhs);
  ScatteringResult r;
  r.k = ch.k;
  r.T = x(0);
  r.R = x(1);
  r.unitarity_defect = std::abs(std::norm(r.T) + std::norm(r.R) - 1.0);
  return r;
}

}  // namespace ssae::coulomb
