#include "ssae/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/cos_pi.hpp>
#include <boost/math/special_functions/sin_pi.hpp>
#include <boost/numeric/odeint.hpp>

#include "ssae/errors.hpp"

namespace ssae::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kLnSqrt2Pi = 0.91893853320467274178032973640561764;
constexpr double kLnPi = 1.14472988584940017414342735135305871;

// Lanczos approximation, g = 7, nine coefficients.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

const Complex kI{0.0, 1.0};

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Complex ln_gamma_lanczos(Complex z) {
  z -= 1.0;
  Complex x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + double(i));
  Complex t = z + kLanczosG + 0.5;
  return kLnSqrt2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

// log(sin(pi z)) without overflow for large |Im z|.  Only exp() of the
// result is relied upon, so the branch is immaterial.
Complex log_sin_pi(Complex z) {
  double y = z.imag();
  if (std::abs(y) < 20.0) return std::log(std::sin(kPi * z));
  // sin(pi z) = e^{-i pi z}(1 - e^{2 i pi z}) / (-2i) for Im z > 0
  if (y > 0) return -kI * kPi * z + std::log(1.0 - std::exp(2.0 * kI * kPi * z)) - std::log(-2.0 * kI);
  return kI * kPi * z + std::log(1.0 - std::exp(-2.0 * kI * kPi * z)) - std::log(2.0 * kI);
}

Complex pochhammer_step(Complex a, int n) { return a + double(n); }

struct SeriesSum {
  Complex value;
  double max_term;
};

SeriesSum kummer_series_raw(Complex a, Complex b, Complex z, const SeriesControl& ctl) {
  Complex term = 1.0, sum = 1.0;
  double max_term = 1.0;
  int small = 0;
  for (int n = 0; n < ctl.max_terms; ++n) {
    term *= pochhammer_step(a, n) / pochhammer_step(b, n) * z / double(n + 1);
    sum += term;
    max_term = std::max(max_term, std::abs(term));
    if (term == 0.0) return {sum, max_term};
    if (std::abs(term) <= ctl.rel_tol * std::abs(sum)) {
      if (++small == 2) return {sum, max_term};
    } else {
      small = 0;
    }
  }
  throw NonConvergence("kummer_f: power series did not converge in max_terms");
}

// Divergent asymptotic sum sum_s (p)_s (q)_s / s! * w^s, truncated at its
// smallest term.  Returns the magnitude of the last included term, which
// bounds the truncation error.
double asymptotic_sum(Complex p, Complex q, Complex w, const SeriesControl& ctl, Complex& sum,
                      Complex* dsum = nullptr) {
  Complex term = 1.0;
  sum = 1.0;
  if (dsum) *dsum = 0.0;
  double prev = 1.0;
  for (int s = 0; s < ctl.max_terms; ++s) {
    Complex next = term * pochhammer_step(p, s) * pochhammer_step(q, s) / double(s + 1) * w;
    double mag = std::abs(next);
    if (mag == 0.0) return 0.0;
    if (mag > prev) break;
    term = next;
    sum += term;
    if (dsum) *dsum += double(s + 1) * term;
    prev = mag;
    if (mag <= 0.1 * ctl.rel_tol * std::abs(sum)) break;
  }
  return prev;
}

// Returns the truncation error estimate relative to the result.
double kummer_asymptotic_raw(Complex a, Complex b, Complex z, const SeriesControl& ctl,
                           Complex& out) {
  // DLMF 13.7.2 multiplied through by Gamma(b).
  Complex lz = std::log(z);
  Complex lgb = ln_gamma(b);
  Complex s1, s2;
  double err = 0.0;
  Complex first = 0.0, second = 0.0;
  if (!is_nonpositive_integer(a)) {
    double e = asymptotic_sum(b - a, 1.0 - a, 1.0 / z, ctl, s1);
    Complex pre = std::exp(z + (a - b) * lz + lgb - ln_gamma(a));
    first = pre * s1;
    err += std::abs(pre) * e;
  }
  if (!is_nonpositive_integer(b - a)) {
    double e = asymptotic_sum(a, a - b + 1.0, -1.0 / z, ctl, s2);
    Complex phase;
    if (z.imag() > 0)
      phase = std::exp(kI * kPi * a);
    else if (z.imag() < 0)
      phase = std::exp(-kI * kPi * a);
    else
      phase = std::cos(kPi * a);
    Complex pre = phase * std::exp(-a * lz + lgb - ln_gamma(b - a));
    second = pre * s2;
    err += std::abs(pre) * e;
  }
  out = first + second;
  return err / std::abs(out);
}

// W_{alpha,1/2} asymptotic expansion and its z-derivative.
bool whittaker_w_asymptotic(Complex alpha, Complex z, const SeriesControl& ctl, Complex& w,
                            Complex& dw) {
  Complex s, ds;
  double err = asymptotic_sum(1.0 - alpha, -alpha, -1.0 / z, ctl, s, &ds);
  bool ok = err <= 10.0 * ctl.rel_tol * std::abs(s);
  Complex pre = std::exp(-0.5 * z + alpha * std::log(z));
  w = pre * s;
  // d/dz of sum_s t_s with t_s ~ z^{-s} is -sum_s s t_s / z
  dw = w * (-0.5 + alpha / z) - pre * ds / z;
  return ok;
}

Complex whittaker_w_series(Complex alpha, Complex z, const SeriesControl& ctl, double& max_term) {
  Complex rg = rgamma(-alpha);
  Complex sigma = rgamma(1.0 - alpha);
  Complex f = kummer_f(1.0 - alpha, 2.0, z, ctl);
  Complex log_part = std::log(z) + digamma(1.0 - alpha) - digamma(Complex(1.0)) - digamma(Complex(2.0));
  Complex head = z * f * log_part;

  // sum_r (1-alpha)_r / (r!(r+1)!) A_r z^{r+1}
  Complex coef = 1.0;  // (1-alpha)_r / (r!(r+1)!)
  Complex zp = z;      // z^{r+1}
  Complex a_r = 0.0;   // A_0 = 0
  Complex tail = 0.0;
  max_term = std::abs(head);
  int small = 0;
  bool done = false;
  for (int r = 0; r < ctl.max_terms; ++r) {
    Complex term = coef * a_r * zp;
    tail += term;
    max_term = std::max(max_term, std::abs(term));
    if (r > 0) {
      if (std::abs(term) <= ctl.rel_tol * std::abs(head + tail)) {
        if (++small == 2) {
          done = true;
          break;
        }
      } else {
        small = 0;
      }
    }
    double n = r;
    a_r += 1.0 / (n + 1.0 - alpha) - 1.0 / (n + 1.0) - 1.0 / (n + 2.0);
    coef *= (1.0 - alpha + n) / ((n + 1.0) * (n + 2.0));
    zp *= z;
  }
  if (!done) throw NonConvergence("whittaker_w: series did not converge in max_terms");
  Complex inner = rg * (head + tail) + sigma;
  max_term = std::abs(rg) * max_term + std::abs(sigma);
  return std::exp(-0.5 * z) * inner;
}

// Carries (y, dy/dz) of a linear second-order ODE along the ray z = t u
// from t0 to t1.  second(z, y, dy) returns d2y/dz2.
template <class F>
void integrate_ray(Complex u, double t0, double t1, Complex& y, Complex& dy, F second) {
  if (t0 == t1) return;
  using State = std::array<double, 4>;
  State x = {y.real(), y.imag(), dy.real(), dy.imag()};
  auto rhs = [&](const State& s, State& d, double t) {
    Complex yy(s[0], s[1]), dd(s[2], s[3]);
    Complex d1 = u * dd;
    Complex d2 = u * second(t * u, yy, dd);
    d = {d1.real(), d1.imag(), d2.real(), d2.imag()};
  };
  namespace odeint = boost::numeric::odeint;
  auto stepper = odeint::make_controlled(1e-300, 1e-13, odeint::runge_kutta_fehlberg78<State>());
  odeint::integrate_adaptive(stepper, rhs, x, t0, t1, 0.05 * (t1 - t0));
  y = {x[0], x[1]};
  dy = {x[2], x[3]};
}

// W is recessive (or oscillatory) outward for Re z >= 0, so it is carried
// inward from a point where its asymptotic expansion is accurate.
Complex whittaker_w_inward(Complex alpha, Complex z, const SeriesControl& ctl) {
  double r = std::abs(z);
  Complex u = z / r;
  double t0 = std::max({ctl.switch_radius, r, 6.0 * std::abs(alpha) + 20.0});
  Complex w, dw;
  while (!whittaker_w_asymptotic(alpha, t0 * u, ctl, w, dw)) {
    t0 *= 1.5;
    if (t0 > 1200.0) throw NonConvergence("whittaker_w: no accurate asymptotic start point");
  }
  integrate_ray(u, t0, r, w, dw, [alpha](Complex zz, Complex y, Complex) { return (0.25 - alpha / zz) * y; });
  return w;
}

// F carried outward from |z| = 8 where the power series is still clean.
Complex kummer_outward(Complex a, Complex b, Complex z, const SeriesControl& ctl) {
  double r = std::abs(z);
  Complex u = z / r;
  double t0 = std::min(8.0, r);
  Complex z0 = t0 * u;
  Complex y = kummer_series_raw(a, b, z0, ctl).value;
  // F' = (a/b) F(a+1, b+1; z)
  Complex dy = a / b * kummer_series_raw(a + 1.0, b + 1.0, z0, ctl).value;
  integrate_ray(u, t0, r, y, dy, [a, b](Complex zz, Complex f, Complex df) { return (a * f - (b - zz) * df) / zz; });
  return y;
}

}  // namespace

void SeriesControl::validate() const {
  if (max_terms < 1) throw ConfigError("SeriesControl.max_terms must be >= 1");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw ConfigError("SeriesControl.rel_tol must lie in (0,1)");
  if (!(switch_radius > 0.0)) throw ConfigError("SeriesControl.switch_radius must be > 0");
}

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

Complex ln_gamma(Complex z) {
  if (!finite(z)) throw PoleError("ln_gamma: non-finite argument");
  if (is_nonpositive_integer(z)) throw PoleError("ln_gamma: pole at non-positive integer");
  if (z.real() >= 0.5) return ln_gamma_lanczos(z);
  if (z.real() > -1e4) {
    // Upward recurrence with principal logs keeps the principal branch.
    Complex acc = 0.0;
    while (z.real() < 0.5) {
      acc += std::log(z);
      z += 1.0;
    }
    return ln_gamma_lanczos(z) - acc;
  }
  return kLnPi - log_sin_pi(z) - ln_gamma_lanczos(1.0 - z);
}

Complex gamma(Complex z) { return std::exp(ln_gamma(z)); }

Complex rgamma(Complex z) {
  if (is_nonpositive_integer(z)) return 0.0;
  if (z.imag() == 0.0) return rgamma(z.real());
  return std::exp(-ln_gamma(z));
}

double rgamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  if (x < 170.0 && x > -170.0) return 1.0 / std::tgamma(x);
  if (x > 0.0) return std::exp(-std::lgamma(x));
  // 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi
  return boost::math::sin_pi(x) / kPi * std::exp(std::lgamma(1.0 - x));
}

double gamma_ratio(double a, double b) {
  if (a <= 0.0 && a == std::floor(a)) throw PoleError("gamma_ratio: numerator at a pole");
  if (b <= 0.0 && b == std::floor(b)) return 0.0;
  if (std::abs(a) < 150.0 && std::abs(b) < 150.0) return std::tgamma(a) * rgamma(b);
  auto sign = [](double x) { return (x > 0.0 || int64_t(std::floor(x)) % 2 == 0) ? 1.0 : -1.0; };
  return sign(a) * sign(b) * std::exp(std::lgamma(a) - std::lgamma(b));
}

Complex digamma(Complex z) {
  if (!finite(z)) throw PoleError("digamma: non-finite argument");
  if (is_nonpositive_integer(z)) throw PoleError("digamma: pole at non-positive integer");
  if (z.real() < 0.5) return digamma(1.0 - z) - kPi / std::tan(kPi * z);
  Complex acc = 0.0;
  while (z.real() < 8.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  Complex r2 = 1.0 / (z * z);
  Complex series =
      r2 * (1.0 / 12 + r2 * (-1.0 / 120 + r2 * (1.0 / 252 + r2 * (-1.0 / 240 + r2 * (1.0 / 132 + r2 * (-691.0 / 32760))))));
  return acc + std::log(z) - 0.5 / z - series;
}

double digamma(double x) { return digamma(Complex(x)).real(); }

double rgamma_times_digamma(double x) {
  if (x >= 0.5) return rgamma(x) * digamma(x);
  // psi(x) = psi(1-x) - pi cot(pi x),  1/Gamma(x) = Gamma(1-x) sin(pi x)/pi
  double g = std::tgamma(1.0 - x);
  return g * (boost::math::sin_pi(x) * digamma(1.0 - x) / kPi - boost::math::cos_pi(x));
}

Complex kummer_f_series(Complex alpha, Complex gamma_c, Complex z, const SeriesControl& ctl) {
  if (is_nonpositive_integer(gamma_c)) throw PoleError("kummer_f: gamma_c is a non-positive integer");
  if (z.real() < 0.0) return std::exp(z) * kummer_series_raw(gamma_c - alpha, gamma_c, -z, ctl).value;
  return kummer_series_raw(alpha, gamma_c, z, ctl).value;
}

Complex kummer_f_asymptotic(Complex alpha, Complex gamma_c, Complex z, const SeriesControl& ctl) {
  if (is_nonpositive_integer(gamma_c)) throw PoleError("kummer_f: gamma_c is a non-positive integer");
  if (z == 0.0) return 1.0;
  Complex out;
  if (z.real() < 0.0) {
    kummer_asymptotic_raw(gamma_c - alpha, gamma_c, -z, ctl, out);
    return std::exp(z) * out;
  }
  kummer_asymptotic_raw(alpha, gamma_c, z, ctl, out);
  return out;
}

Complex kummer_f(Complex alpha, Complex gamma_c, Complex z, const SeriesControl& ctl) {
  if (is_nonpositive_integer(gamma_c)) throw PoleError("kummer_f: gamma_c is a non-positive integer");
  bool flip = z.real() < 0.0;
  Complex a = flip ? gamma_c - alpha : alpha;
  Complex w = flip ? -z : z;
  Complex scale = flip ? std::exp(z) : Complex(1.0);
  // A terminating series is exact; no need for the asymptotic form.
  if (std::abs(w) < ctl.switch_radius || is_nonpositive_integer(a))
    return scale * kummer_series_raw(a, gamma_c, w, ctl).value;
  Complex out;
  double est = kummer_asymptotic_raw(a, gamma_c, w, ctl, out);
  if (est <= 10.0 * ctl.rel_tol) return scale * out;
  // Large parameters: the series may still be clean (no cancellation).
  try {
    SeriesSum s = kummer_series_raw(a, gamma_c, w, ctl);
    if (s.max_term <= 1e3 * std::abs(s.value)) return scale * s.value;
  } catch (const NonConvergence&) {
  }
  return scale * kummer_outward(a, gamma_c, w, ctl);
}

Complex whittaker_m(Complex alpha, Complex z, const SeriesControl& ctl) {
  return z * std::exp(-0.5 * z) * kummer_f(1.0 - alpha, 2.0, z, ctl);
}

Complex whittaker_a_coefficient(Complex alpha, int r) {
  Complex a = 0.0;
  for (int n = 0; n < r; ++n) a += 1.0 / (double(n) + 1.0 - alpha) - 1.0 / (n + 1.0) - 1.0 / (n + 2.0);
  return a;
}

Complex whittaker_w(Complex alpha, Complex z, const SeriesControl& ctl) {
  if (alpha.real() > 0.5) {
    double k = std::round(alpha.real());
    if (std::abs(alpha - Complex(k)) <= 1e-6)
      throw PoleError("whittaker_w: alpha within 1e-6 of a positive integer");
  }
  if (z == 0.0) return rgamma(1.0 - alpha);
  bool real_positive = z.imag() == 0.0 && z.real() > 0.0;
  // On the positive axis the series terms grow like e^{z/2} while W decays
  // like e^{-z/2}; past z = 4 the cancellation costs more than 1e-13.
  if (real_positive && z.real() > 4.0 && z.real() < ctl.switch_radius)
    return whittaker_w_inward(alpha, z, ctl);
  if (std::abs(z) < ctl.switch_radius) {
    double max_term = 0.0;
    Complex w = whittaker_w_series(alpha, z, ctl, max_term);
    // The series carries e^{+z/2}-sized terms that cancel down to e^{-z/2}.
    double inner = std::abs(w * std::exp(0.5 * z));
    if (max_term <= 1e5 * inner) return w;
    return whittaker_w_inward(alpha, z, ctl);
  }
  Complex w, dw;
  if (whittaker_w_asymptotic(alpha, z, ctl, w, dw)) return w;
  return whittaker_w_inward(alpha, z, ctl);
}

}  // namespace ssae::specfun
