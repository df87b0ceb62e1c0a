#include "ssae/potentials.hpp"

#include <cmath>
#include <memory>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "ssae/errors.hpp"
#include "ssae/specfun.hpp"

namespace ssae::potentials {

using generic::CustomPotential;
using generic::ReferenceModes;

namespace {
constexpr int kTaylorTerms = 80;
}

CustomPotential coulomb(const coulomb::CoulombModel& model) {
  model.validate();
  CustomPotential p;
  p.name = "coulomb";
  double e2 = model.e2;
  p.v = [e2](double x) { return -e2 / std::abs(x); };
  p.q = {0.0, -model.xi_scale()};
  p.frobenius = {1.0, 0.0, true};
  p.hbar = model.hbar;
  p.m = model.m;
  p.eps = 0.02 / std::abs(model.xi_scale());
  return p;
}

CustomPotential oscinv(const oscillator::OscillatorModel& model) {
  model.validate();
  CustomPotential p;
  p.name = "oscinv";
  double k = 0.5 * model.m * model.omega * model.omega, g = model.g;
  p.v = [k, g](double x) { return k * x * x + g / (x * x); };
  double a = oscillator::a_param(model), s = model.s();
  p.q.assign(5, 0.0);
  p.q[0] = 2.0 * model.m * g / (model.hbar * model.hbar);
  p.q[4] = std::pow(s, 4);
  p.frobenius = {0.5 + a, 0.5 - a, false};
  p.hbar = model.hbar;
  p.m = model.m;
  p.eps = 0.05 / s;
  return p;
}

CustomPotential oscinv_gauss(const oscillator::OscillatorModel& model, double amplitude) {
  CustomPotential p = oscinv(model);
  p.name = "oscinv_gauss";
  double s = model.s(), A = amplitude * model.hbar * model.omega;
  auto base = p.v;
  p.v = [base, A, s](double x) { return base(x) + A * std::exp(-s * s * x * x); };
  // x^2 (2m/hbar^2) A e^{-s^2 x^2} = 2 amplitude s^2 sum (-1)^n s^{2n} x^{2n+2} / n!
  p.q.resize(kTaylorTerms, 0.0);
  double c = 2.0 * amplitude * s * s;
  for (int n = 0; 2 * n + 2 < kTaylorTerms; ++n) {
    p.q[2 * n + 2] += c;
    c *= -s * s / (n + 1);
  }
  return p;
}

CustomPotential harmonic(double omega, double hbar, double m) {
  CustomPotential p;
  p.name = "harmonic";
  double k = 0.5 * m * omega * omega;
  p.v = [k](double x) { return k * x * x; };
  p.q = {0.0, 0.0, 0.0, 0.0, m * m * omega * omega / (hbar * hbar)};
  p.frobenius = {1.0, 0.0, false};
  p.hbar = hbar;
  p.m = m;
  p.eps = 0.05 / std::sqrt(m * omega / hbar);
  return p;
}

CustomPotential free_particle(double hbar, double m) {
  CustomPotential p;
  p.name = "free";
  p.v = [](double) { return 0.0; };
  p.q = {0.0};
  p.frobenius = {1.0, 0.0, false};
  p.hbar = hbar;
  p.m = m;
  return p;
}

CustomPotential tabulated(double q0, double q1, double h, const std::vector<double>& v_regular, double hbar,
                          double m) {
  if (v_regular.size() < 4) throw ConfigError("tabulated: need at least 4 samples");
  if (!(h > 0.0)) throw ConfigError("tabulated: spacing must be positive");
  using Spline = boost::math::interpolators::cardinal_cubic_b_spline<double>;
  auto spline = std::make_shared<Spline>(v_regular.begin(), v_regular.end(), 0.0, h);
  double x_end = h * (v_regular.size() - 1);
  double v_end = v_regular.back();
  double k = hbar * hbar / (2.0 * m);
  CustomPotential p;
  p.name = "tabulated";
  p.v = [=](double x) {
    double ax = std::abs(x);
    double reg = ax >= x_end ? v_end : (*spline)(ax);
    return k * (q0 / (ax * ax) + q1 / ax) + reg;
  };
  p.q = {q0, q1, (*spline)(0.0) / k, spline->prime(0.0) / k};
  double disc = std::sqrt(0.25 + q0);
  p.frobenius = {0.5 + disc, 0.5 - disc, std::abs(disc - 0.5) < 1e-12 && q1 != 0.0};
  p.hbar = hbar;
  p.m = m;
  // the regular part is known to first order only: start close to 0
  p.eps = std::min(1e-3, 0.01 * h);
  return p;
}

ReferenceModes coulomb_modes(const coulomb::CoulombModel& model, double ref_E) {
  double b = coulomb::alpha_of_energy(model, ref_E);
  if (b > 0.5 && std::abs(b - std::round(b)) < 1e-9) throw PoleError("coulomb_modes: reference at a pole");
  double sc = model.xi_scale();
  // phi_hat_1 = F1, phi_hat_2 = -F2 - c F1 with c fixed by the small-x form
  // of Gamma(1-beta) W_{beta,1/2}; logs of negative beta and scale cancel.
  double c = sc * (std::log(std::abs(b)) - specfun::digamma(1.0 - b) - 0.5 / b -
                   (2.0 * specfun::kEulerGamma - 1.0 + std::log(std::abs(sc))));
  ReferenceModes r;
  r.E_ref = ref_E;
  r.R << 1.0, 0.0, -c, -1.0;
  return r;
}

ReferenceModes oscillator_modes(const oscillator::OscillatorModel& model) {
  double a = oscillator::a_param(model), s = model.s();
  ReferenceModes r;
  r.E_ref = 0.0;
  r.R << std::pow(s, a - 0.5), 0.0, 0.0, std::pow(s, 0.5 - a) / (-2.0 * a);
  return r;
}

CustomPotential by_name(const std::string& id, const Params& p) {
  if (id == "coulomb") return coulomb(coulomb::CoulombModel{p.e2, p.hbar, p.m});
  if (id == "oscinv") return oscinv(oscillator::OscillatorModel{p.omega, p.g, p.hbar, p.m});
  if (id == "oscinv_gauss") return oscinv_gauss(oscillator::OscillatorModel{p.omega, p.g, p.hbar, p.m}, p.amplitude);
  if (id == "harmonic") return harmonic(p.omega, p.hbar, p.m);
  if (id == "free") return free_particle(p.hbar, p.m);
  throw ConfigError("unknown potential '" + id + "'");
}

}  // namespace ssae::potentials
