#pragma once

// Harmonic oscillator with a repulsive inverse-square core,
// V(x) = m omega^2 x^2 / 2 + g / x^2, in the dimensionless energy
// lambda = E / (hbar omega).

#include <cmath>

#include "ssae/spectrum.hpp"
#include "ssae/u2ext.hpp"

namespace ssae::oscillator {

/// g must satisfy 0 < 8 m g / hbar^2 < 3; validate() throws
/// CouplingOutOfRange otherwise.
struct OscillatorModel {
  double omega = 1.0;
  double g = 0.15625;  // a = 3/4 in units hbar = m = 1
  double hbar = 1.0;
  double m = 1.0;

  void validate() const;
  /// Model with the given a in (1/2, 1).
  static OscillatorModel from_a(double a, double omega = 1.0, double hbar = 1.0, double m = 1.0);

  double c1() const;
  double c2() const;
  /// sqrt(m omega / hbar), the inverse oscillator length.
  double s() const { return std::sqrt(m * omega / hbar); }
};

/// a = sqrt(1 + 8mg/hbar^2) / 2.
double a_param(const OscillatorModel& model);

/// xi(lambda) = s/(c2-c1) * Gamma(c2)/Gamma(c1) * Gamma((c1-lambda)/2)/Gamma((c2-lambda)/2).
/// Poles at lambda = c1 + 2n (PoleError within 1e-9), zeros at c2 + 2n.
double xi_bound(double lambda, const OscillatorModel& model);

/// xi = num/den with both parts entire in lambda:
/// den = (c1-c2) Gamma(c1) / Gamma((c1-lambda)/2), num = -s Gamma(c2) / Gamma((c2-lambda)/2).
struct Pencil {
  double den;
  double num;
};
Pencil xi_pencil(double lambda, const OscillatorModel& model);

/// Roots in lambda of sin(theta/2) + L0 xi cos(theta/2): one below c1 and
/// one between each pair of consecutive poles, the lowest `count`.
std::vector<double> branch_roots(const OscillatorModel& model, double theta, double L0, int count);

SpectrumResult bound_spectrum(const OscillatorModel& model, const ExtensionSpec& spec, int count = 5);

/// U = sigma1, eigenphases (0, pi): the union of the c2 and c1 ladders,
/// which tends to the plain oscillator (n + 1/2) as g -> 0.
SpectrumResult free_case_spectrum(const OscillatorModel& model, int count = 6);

}  // namespace ssae::oscillator
