#pragma once

// Special functions used by the spectral models: complex log-Gamma and
// digamma, Kummer's confluent hypergeometric function, and the Whittaker
// functions M and W with second index 1/2.

#include <complex>

namespace ssae::specfun {

using Complex = std::complex<double>;

/// Truncation control for the series/asymptotic evaluators.
struct SeriesControl {
  int max_terms = 500;
  double rel_tol = 1e-13;
  double switch_radius = 30.0;  // |z| at which the asymptotic form takes over

  /// Throws ssae::ConfigError when a field is out of range.
  void validate() const;
};

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

bool is_nonpositive_integer(Complex z);

/// Log-Gamma, continuous in the plane cut along the negative real axis.
/// Real for real z > 0.  Throws PoleError at z = 0, -1, -2, ...
Complex ln_gamma(Complex z);
Complex gamma(Complex z);

/// 1/Gamma(z); entire, exactly zero at the poles of Gamma.
Complex rgamma(Complex z);
double rgamma(double x);

/// Sign-aware real Gamma helpers.  gamma_ratio(a, b) = Gamma(a)/Gamma(b)
/// evaluated through log-Gamma when the arguments are large.
double gamma_ratio(double a, double b);

Complex digamma(Complex z);
double digamma(double x);

/// rgamma(x) * digamma(x); finite at the poles of Gamma, where it takes the
/// limiting value (-1)^(m+1) m! at x = -m.
double rgamma_times_digamma(double x);

/// Kummer's F(alpha, gamma; z) = 1F1.  Power series for |z| below
/// ctl.switch_radius (Kummer-transformed for Re z < 0), the two-sided
/// asymptotic expansion beyond.
Complex kummer_f(Complex alpha, Complex gamma_c, Complex z,
                 const SeriesControl& ctl = {});

/// Plain power series, regardless of |z|.  Exposed for the handoff checks.
Complex kummer_f_series(Complex alpha, Complex gamma_c, Complex z,
                        const SeriesControl& ctl = {});
/// Large-|z| expansion, regardless of |z|.
Complex kummer_f_asymptotic(Complex alpha, Complex gamma_c, Complex z,
                            const SeriesControl& ctl = {});

/// Regular Whittaker function M_{alpha,1/2}(z) = z e^{-z/2} F(1-alpha, 2; z).
Complex whittaker_m(Complex alpha, Complex z, const SeriesControl& ctl = {});

/// Irregular Whittaker function W_{alpha,1/2}(z) from its logarithmic series
///
///   W = e^{-z/2}/Gamma(-alpha) { z F(1-alpha,2;z) [ln z + psi(1-alpha)
///       - psi(1) - psi(2)] - 1/alpha + sum_r (1-alpha)_r/(r!(r+1)!) A_r z^{r+1} }
///
/// with the -1/alpha term folded into 1/Gamma(1-alpha) so alpha = 0 is
/// regular.  Beyond ctl.switch_radius the standard asymptotic expansion
/// e^{-z/2} z^alpha sum_s (1-alpha)_s (-alpha)_s / s! (-z)^{-s} is used.
/// Throws PoleError when alpha lies within 1e-6 of a positive integer.
Complex whittaker_w(Complex alpha, Complex z, const SeriesControl& ctl = {});

/// A_r = sum_{n<r} [1/(n+1-alpha) - 1/(n+1) - 1/(n+2)].
Complex whittaker_a_coefficient(Complex alpha, int r);

}  // namespace ssae::specfun
