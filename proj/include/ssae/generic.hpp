#pragma once

// ODE engine for parity-invariant potentials that are limit-circle at the
// origin and limit-point at infinity.  Solutions are started from a
// Frobenius expansion at x = eps, integrated on the half line, and matched
// to the solution that decays at large x.  Wronskians at +0 between
// Frobenius solutions are taken from their exact leading-order limits.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ssae/spectrum.hpp"
#include "ssae/u2ext.hpp"

namespace ssae::generic {

/// Indicial exponents s1 > s2 of the equation at x -> 0+; log_flag marks an
/// integer gap whose second solution carries an x^{s1} ln x term.
struct Frobenius {
  double s1 = 1.0;
  double s2 = 0.0;
  bool log_flag = false;
};

struct CustomPotential {
  std::string name;
  /// V on the punctured line; must satisfy V(-x) = V(x).
  std::function<double(double)> v;
  /// Taylor coefficients of x^2 (2m/hbar^2) V(x) at 0.
  std::vector<double> q;
  Frobenius frobenius;
  double hbar = 1.0;
  double m = 1.0;
  /// Start of the Frobenius hand-off; shrunk automatically until the
  /// truncated series has converged.
  double eps = 0.05;
  /// Fixed outer matching point; 0 selects it from the WKB exponent.
  double lp_check_x = 0.0;

  /// Checks parity on 50 points and the declared exponents against q
  /// (SeriesFailure on mismatch).
  void validate() const;
};

/// Values of the two Frobenius solutions F1 ~ x^{s1}, F2 ~ x^{s2} (each
/// with unit leading coefficient) and their derivatives at x.
struct Seed {
  double x;
  double f1, df1;
  double f2, df2;
};

Seed frobenius_start(const CustomPotential& pot, double E, double eps);

struct Sample {
  double x;
  double psi;
  double dpsi;
};

struct HalfLineSolution {
  double E;
  std::vector<Sample> samples;  // ordered in the direction of integration
};

/// Adaptive RKF78 integration (relative tolerance 1e-12) from (x0, psi0,
/// dpsi0) to x1 in either direction; every accepted step is sampled.
HalfLineSolution integrate_halfline(const CustomPotential& pot, double E, double x0, double psi0, double dpsi0,
                                    double x1);

/// Real reference modes at E_ref: phi_hat_i = R(i,0) F1 + R(i,1) F2 with
/// W[phi_hat_1, phi_hat_2] = 1.
struct ReferenceModes {
  double E_ref = 0.0;
  Eigen::Matrix2d R = Eigen::Matrix2d::Identity();

  /// W[phi_hat_1, phi_hat_2] at +0.
  double wronskian(const CustomPotential& pot) const;
};

/// phi_hat_1 = F1, phi_hat_2 = -F2 / (s1 - s2).
ReferenceModes default_modes(const CustomPotential& pot, double E_ref);

/// The reference modes integrated on [eps, x_max].
std::pair<HalfLineSolution, HalfLineSolution> sample_reference_modes(const CustomPotential& pot,
                                                                     const ReferenceModes& modes, double x_max);

/// The decaying solution u = A F1 + B F2 at energy E, with the matching
/// points actually used.
struct DecayMatch {
  double A;
  double B;
  double x_match;
  double x_max;
};

/// x_max <= 0 selects the outer point automatically.
DecayMatch decay_match(const CustomPotential& pot, double E, double x_max = 0.0);

/// B / A: +inf when the decaying solution is pure F2.  Throws
/// NoDecaySeparation when the potential does not confine at E.
double decay_ratio(const CustomPotential& pot, double E, double x_max = 0.0);

/// Boundary data of the decaying solution, P = W[u, phi_hat_1]_{+0} and
/// Q = W[u, phi_hat_2]_{+0}, scaled to P^2 + Q^2 = 1.  xi = Q / P.
struct BoundaryData {
  double P;
  double Q;
};
BoundaryData boundary_data(const CustomPotential& pot, double E, const ReferenceModes& modes);

double xi_of_energy(const CustomPotential& pot, double E, const ReferenceModes& modes);

struct SpectrumOptions {
  int count = 4;
  std::pair<double, double> window{-10.0, 10.0};  // energies
  int grid = 512;
  /// Grid uniform in ln(-E); needs a window below zero.  Suits spectra
  /// that accumulate at E -> 0-.
  bool log_spacing = false;
};

/// Per-branch roots of sin(theta/2) P + L0 cos(theta/2) Q on the window grid.
SpectrumResult spectrum(const CustomPotential& pot, const ExtensionSpec& spec, const ReferenceModes& modes,
                        const SpectrumOptions& opt = {});

/// Roots of det[P (U - I) + i L0 Q (U + I)] built from the matrix itself,
/// without its eigen-decomposition.  Double roots (degenerate levels) show
/// no sign change and are missed; use distinct eigenphases.
std::vector<double> spectrum_matrix(const CustomPotential& pot, const ExtensionMatrix& u, double L0,
                                    const ReferenceModes& modes, const SpectrumOptions& opt = {});

/// j = (hbar/m) Im(psi* psi').
double probability_current(Complex psi, Complex dpsi, double hbar = 1.0, double m = 1.0);

}  // namespace ssae::generic
