#pragma once

// One-dimensional hydrogen atom V(x) = -e^2/|x|: bound-state spectral
// function, spectra for arbitrary U(2) connection conditions, and the
// scattering coefficients.

#include <optional>
#include <utility>

#include "ssae/spectrum.hpp"
#include "ssae/u2ext.hpp"

namespace ssae::coulomb {

/// Coupling e2 < 0 describes the repulsive potential.
struct CoulombModel {
  double e2 = 1.0;
  double hbar = 1.0;
  double m = 1.0;

  void validate() const;
  /// 2 m e^2 / hbar^2, the prefactor of xi.
  double xi_scale() const { return 2.0 * m * e2 / (hbar * hbar); }
};

struct BoundChannel {
  double E;
  double alpha;  // (e^2/hbar) sqrt(-m/2E)
  double eta;    // sqrt(-2mE)/hbar
};

struct ScatterChannel {
  double E_k;
  double k;
  double gamma;  // -(e^2/hbar) sqrt(m/2E_k)
  double eta0;   // arg Gamma(1 + i gamma)
};

struct ScatteringResult {
  double k;
  Complex T;
  Complex R;
  double unitarity_defect;
};

/// Pole-free representation of xi = num/den; den = sigma = 1/Gamma(1-alpha).
struct Pencil {
  double den;
  double num;
};

double alpha_of_energy(const CoulombModel& model, double E);
double energy_of_alpha(const CoulombModel& model, double alpha);

BoundChannel bound_channel(const CoulombModel& model, double E);
ScatterChannel scatter_channel(const CoulombModel& model, double E_k);

/// A convenient non-pole reference energy: beta = 1/2 (E = -2 m e^4/hbar^2).
double default_bound_reference(const CoulombModel& model);

double sigma_bound(const BoundChannel& ch);

/// xi = (2me^2/hbar^2)[ln(alpha/beta) - psi(1-alpha) + psi(1-beta)
///       + 1/(2 beta) - 1/(2 alpha)]
/// with beta from ref_E.  The last two terms come from the O(z) part of
/// e^{-z/2} in the small-z form of W and make xi the exact Wronskian ratio
/// of the reference modes.  Throws PoleError within 1e-9 of alpha in Z+.
double xi_bound(const BoundChannel& ch, double ref_E, const CoulombModel& model);

/// (sigma, sigma xi), finite for every E < 0.
Pencil xi_pencil(const CoulombModel& model, double E, double ref_E);

struct BoundOptions {
  int count = 5;
  std::optional<double> ref_E;                       // default_bound_reference
  std::optional<std::pair<double, double>> window;   // energies, both < 0
  int subgrid = 64;
};

SpectrumResult bound_spectrum(const CoulombModel& model, const ExtensionSpec& spec,
                              const BoundOptions& opt = {});

/// Roots of one branch in energy, ascending.
std::vector<double> branch_roots(const CoulombModel& model, double theta, double L0, double ref_E,
                                 double alpha_lo, double alpha_hi, int subgrid = 64);

double coulomb_phase(double gamma);

/// rho = (me^2/hbar^2)(f(ref_E) - f(E_k)),
/// f(s) = 2 ln gamma(s) - psi(1 - i gamma(s)) - psi(1 + i gamma(s)).
Complex rho_factor_complex(double ref_E, double E_k, const CoulombModel& model);
double rho_factor(double ref_E, double E_k, const CoulombModel& model);

/// Omega = k e^{-pi gamma} |Gamma(1+i gamma)|^2 + i rho
///       = k 2 pi gamma / (e^{2 pi gamma} - 1) + i rho.
Complex omega_factor(const ScatterChannel& ch, double rho);

/// chi = -arg(sin(theta/2) + i Omega L0 cos(theta/2)); equals
/// -arg(1 + i Omega L) away from theta = 0.
double chi_angle(double theta, double L0, Complex omega);

/// Closed form in (chi+, chi-, mu, nu).  ref_E defaults to E_k (rho = 0).
ScatteringResult scattering(const CoulombModel& model, const ExtensionSpec& spec, double E_k,
                            std::optional<double> ref_E = std::nullopt);

/// Direct 2x2 solve of
/// [(U-I) - Omega L0 (U+I)] (T,R) = -e^{2i eta0} [(U-I) + Omega* L0 (U+I)] (0,1).
ScatteringResult scattering_matrix_form(const CoulombModel& model, const ExtensionMatrix& u, double L0,
                                        double E_k, std::optional<double> ref_E = std::nullopt);

}  // namespace ssae::coulomb
