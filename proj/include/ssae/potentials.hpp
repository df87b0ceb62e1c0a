#pragma once

// Built-in potentials for the ODE engine, with the reference modes that
// reproduce the closed-form normalizations of the Coulomb and oscillator
// modules.

#include <string>
#include <vector>

#include "ssae/coulomb.hpp"
#include "ssae/generic.hpp"
#include "ssae/oscillator.hpp"

namespace ssae::potentials {

/// V = -e^2 / |x|.
generic::CustomPotential coulomb(const coulomb::CoulombModel& model);

/// V = m omega^2 x^2 / 2 + g / x^2.
generic::CustomPotential oscinv(const oscillator::OscillatorModel& model);

/// oscinv plus amplitude * hbar omega * exp(-(x/l)^2), l = sqrt(hbar / m omega).
generic::CustomPotential oscinv_gauss(const oscillator::OscillatorModel& model, double amplitude);

/// V = m omega^2 x^2 / 2 (regular at the origin).
generic::CustomPotential harmonic(double omega = 1.0, double hbar = 1.0, double m = 1.0);

/// V = 0; not confining, useful only for local checks.
generic::CustomPotential free_particle(double hbar = 1.0, double m = 1.0);

/// Singular part hbar^2/(2m) (q0/x^2 + q1/|x|) plus a regular part sampled
/// on the uniform grid x_i = i h, i = 0..n-1, interpolated by a cubic
/// B-spline and held constant beyond the last sample.
generic::CustomPotential tabulated(double q0, double q1, double h, const std::vector<double>& v_regular,
                                   double hbar = 1.0, double m = 1.0);

/// Reference modes of the Coulomb module for reference energy ref_E < 0.
generic::ReferenceModes coulomb_modes(const coulomb::CoulombModel& model, double ref_E);

/// Reference modes of the oscillator module (energy independent).
generic::ReferenceModes oscillator_modes(const oscillator::OscillatorModel& model);

/// Registry lookup for analytic forms: "coulomb", "oscinv", "oscinv_gauss",
/// "harmonic", "free".  Parameters in the usual units (hbar = m = 1 unless
/// set): e2, omega, g (or a), amplitude.
struct Params {
  double e2 = 1.0;
  double omega = 1.0;
  double g = 0.15625;
  double amplitude = 0.1;
  double hbar = 1.0;
  double m = 1.0;
};
generic::CustomPotential by_name(const std::string& id, const Params& p);

}  // namespace ssae::potentials
