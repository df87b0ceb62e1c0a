#include <cmath>
#include <random>

#include "doctest.h"
#include "ssae/coulomb.hpp"
#include "ssae/errors.hpp"
#include "ssae/specfun.hpp"

using namespace ssae;
using namespace ssae::coulomb;

// Frozen values below come from tools/oracles.py (mpmath, 40 digits).

namespace {
constexpr double kPi = 3.14159265358979323846;
const Complex kI{0.0, 1.0};
const CoulombModel kAtomic{};

ExtensionSpec random_spec(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(0.0, 2 * kPi), half(0.0, kPi), len(0.2, 3.0);
  return {ang(rng), ang(rng), half(rng), ang(rng), len(rng)};
}
}  // namespace

TEST_CASE("channel variables") {
  auto ch = bound_channel(kAtomic, -0.125);
  CHECK(ch.alpha == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(ch.eta == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(energy_of_alpha(kAtomic, 3.0) == doctest::Approx(-1.0 / 18.0).epsilon(1e-15));
  CoulombModel rep{-1.0, 1.0, 1.0};
  CHECK(bound_channel(rep, -0.5).alpha == doctest::Approx(-1.0));
  CHECK_THROWS_AS(bound_channel(kAtomic, 0.1), ConfigError);
  CHECK_THROWS_AS((CoulombModel{1.0, 0.0, 1.0}.validate()), ConfigError);
}

TEST_CASE("sigma") {
  CHECK(sigma_bound(bound_channel(kAtomic, energy_of_alpha(kAtomic, 2.5))) ==
        doctest::Approx(0.42314218766081722).epsilon(1e-13));
  for (int n = 1; n <= 4; ++n) CHECK(std::abs(sigma_bound(bound_channel(kAtomic, energy_of_alpha(kAtomic, n)))) < 1e-14);
}

TEST_CASE("xi values") {
  double e = energy_of_alpha(kAtomic, 0.5);
  CHECK(xi_bound(bound_channel(kAtomic, e), e, kAtomic) == 0.0);
  double xi = xi_bound(bound_channel(kAtomic, e), energy_of_alpha(kAtomic, 0.25), kAtomic);
  CHECK(xi == doctest::Approx(5.1415926535897932).epsilon(1e-13));
  // against the Wronskian ratio of the Whittaker modes at x -> 0
  CHECK(xi_bound(bound_channel(kAtomic, -0.3), -0.2, kAtomic) == doctest::Approx(-6.448842606696982).epsilon(1e-12));
  // sign change across every pole
  for (int n = 1; n <= 4; ++n) {
    double below = xi_bound(bound_channel(kAtomic, energy_of_alpha(kAtomic, n - 1e-4)), -0.2, kAtomic);
    double above = xi_bound(bound_channel(kAtomic, energy_of_alpha(kAtomic, n + 1e-4)), -0.2, kAtomic);
    CHECK(below > 1e3);
    CHECK(above < -1e3);
  }
  CHECK_THROWS_AS(xi_bound(bound_channel(kAtomic, -0.5), -0.2, kAtomic), PoleError);
  CHECK_THROWS_AS(xi_bound(bound_channel(kAtomic, -0.2), -0.5, kAtomic), PoleError);
}

TEST_CASE("xi pencil agrees away from poles and is finite at them") {
  for (double a : {0.3, 0.77, 1.4, 2.6, 3.95}) {
    double E = energy_of_alpha(kAtomic, a);
    auto p = xi_pencil(kAtomic, E, -0.2);
    CHECK(p.num / p.den == doctest::Approx(xi_bound(bound_channel(kAtomic, E), -0.2, kAtomic)).epsilon(1e-11));
  }
  for (int n = 1; n <= 3; ++n) {
    auto p = xi_pencil(kAtomic, energy_of_alpha(kAtomic, n), -0.2);
    CHECK(std::abs(p.den) < 1e-14);
    CHECK(std::isfinite(p.num));
    CHECK(std::abs(p.num) > 0.1);
  }
}

TEST_CASE("Friedrichs extension gives the doubly degenerate Balmer series") {
  ExtensionSpec s{kPi, kPi, 0.0, 0.0, 1.0};
  auto res = bound_spectrum(kAtomic, s);
  REQUIRE(res.levels.size() == 5);
  for (int n = 1; n <= 5; ++n) {
    CHECK(res.levels[n - 1].energy == doctest::Approx(-0.5 / (n * n)).epsilon(1e-8));
    CHECK(res.levels[n - 1].degeneracy == 2);
    CHECK(res.levels[n - 1].branch == Branch::both);
  }
}

TEST_CASE("theta = pi/2 spectrum against a dense independent scan") {
  ExtensionSpec s{kPi / 2, kPi / 2, 0.0, 0.0, 1.0};
  BoundOptions opt;
  opt.count = 4;
  opt.ref_E = -0.2;
  auto res = bound_spectrum(kAtomic, s, opt);
  const double expect[] = {-1.9300570644842063, -0.21304439354869365, -0.077860415178117064, -0.040018089761946627};
  REQUIRE(res.levels.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(res.levels[i].energy == doctest::Approx(expect[i]).epsilon(1e-10));
    CHECK(res.levels[i].degeneracy == 2);
  }
  opt.ref_E = -0.5;
  CHECK_THROWS_AS(bound_spectrum(kAtomic, s, opt), PoleError);
}

TEST_CASE("split branches and levels per interval") {
  ExtensionSpec s{kPi, kPi / 2, 0.0, 0.0, 1.0};
  BoundOptions opt;
  opt.count = 6;
  opt.ref_E = -0.2;
  auto res = bound_spectrum(kAtomic, s, opt);
  int plus = 0, minus = 0;
  for (auto& l : res.levels) {
    CHECK(l.degeneracy == 1);
    (l.branch == Branch::plus ? plus : minus)++;
  }
  CHECK(plus == 3);
  CHECK(minus == 3);
  CHECK(res.levels[0].energy == doctest::Approx(-1.9300570644842063).epsilon(1e-10));
  CHECK(res.levels[1].energy == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("reference change is absorbed by the scale length") {
  // xi(E; b') = xi(E; b) + xi(E_b; b'), so the spectrum of theta with b
  // equals that of theta' with b' where 1/L' = 1/L - xi(E_b; b').
  double th = 2.1, L0 = 1.3;
  double L = scale_length(th, L0);
  double shift = xi_bound(bound_channel(kAtomic, -0.2), -0.3, kAtomic);
  double Lp = 1.0 / (1.0 / L - shift);
  double thp = 2.0 * std::atan2(L0, Lp);
  BoundOptions a, b;
  a.count = b.count = 4;
  a.ref_E = -0.2;
  b.ref_E = -0.3;
  auto r1 = bound_spectrum(kAtomic, ExtensionSpec{th, th, 0.0, 0.0, L0}, a);
  auto r2 = bound_spectrum(kAtomic, ExtensionSpec{thp, thp, 0.0, 0.0, L0}, b);
  for (int i = 0; i < 4; ++i) CHECK(r2.levels[i].energy == doctest::Approx(r1.levels[i].energy).epsilon(1e-9));
}

TEST_CASE("repulsive coupling") {
  CoulombModel rep{-1.0, 1.0, 1.0};
  ExtensionSpec fr{kPi, kPi, 0.0, 0.0, 1.0};
  BoundOptions opt;
  opt.count = 1;
  opt.ref_E = -0.2;
  CHECK_THROWS_AS(bound_spectrum(rep, fr, opt), WindowTooSmall);
}

TEST_CASE("Coulomb phase") {
  CHECK(coulomb_phase(0.0) == 0.0);
  CHECK(coulomb_phase(0.5) == doctest::Approx(-0.24405829890542776).epsilon(1e-13));
  // |Gamma(1 + i)|^2 = pi / sinh(pi)
  Complex g = specfun::gamma(Complex(1.0, 1.0));
  CHECK(std::norm(g) == doctest::Approx(kPi / std::sinh(kPi)).epsilon(1e-13));
  CHECK(std::arg(g) == doctest::Approx(coulomb_phase(1.0)).epsilon(1e-13));
}

TEST_CASE("rho and Omega") {
  CHECK(rho_factor(1.0, 1.0, kAtomic) == 0.0);
  CHECK(rho_factor(2.0, 1.0, kAtomic) == doctest::Approx(-0.33768235651012821).epsilon(1e-12));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> e(0.01, 20.0);
  for (int i = 0; i < 20; ++i) CHECK(std::abs(rho_factor_complex(e(rng), e(rng), kAtomic).imag()) < 1e-13);

  ScatterChannel ch{0.5, 1.0, 0.5, coulomb_phase(0.5)};
  Complex om = omega_factor(ch, 0.2);
  CHECK(om.real() == doctest::Approx(0.14189224816475114).epsilon(1e-13));
  CHECK(om.imag() == 0.2);
  ch.gamma = 0.0;
  CHECK(omega_factor(ch, 0.0).real() == 1.0);
}

TEST_CASE("scattering is unitary") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ek(0.01, 30.0), er(0.05, 10.0);
  for (int j = 0; j < 50; ++j) {
    ExtensionSpec s = random_spec(rng);
    double ref = er(rng);
    for (int i = 0; i < 20; ++i) {
      auto r = scattering(kAtomic, s, ek(rng), ref);
      CHECK(r.unitarity_defect < 1e-12);
    }
  }
}

TEST_CASE("separated conditions do not transmit") {
  for (double k2 : {0.1, 1.0, 7.0}) {
    auto r = scattering(kAtomic, ExtensionSpec{0.7, 2.3, 0.0, 0.0, 1.0}, k2);
    CHECK(std::abs(r.T) == 0.0);
    CHECK(std::abs(r.R) == doctest::Approx(1.0).epsilon(1e-14));
    auto m = scattering_matrix_form(kAtomic, ExtensionMatrix::diagonal(0.7, 2.3), 1.0, k2);
    CHECK(std::abs(m.T) < 1e-14);
    CHECK(std::abs(m.R - r.R) < 1e-12);
  }
}

TEST_CASE("closed form against the matrix form") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ek(0.01, 30.0), er(0.05, 10.0);
  for (int j = 0; j < 100; ++j) {
    ExtensionSpec s = random_spec(rng);
    double E = ek(rng), ref = er(rng);
    auto a = scattering(kAtomic, s, E, ref);
    auto b = scattering_matrix_form(kAtomic, recompose(s), s.L0, E, ref);
    CHECK(std::abs(a.T - b.T) < 1e-10);
    CHECK(std::abs(a.R - b.R) < 1e-10);
  }
}

TEST_CASE("scattering state satisfies the connection condition") {
  // Boundary data of e^{ikx} + R e^{-ikx} / T e^{ikx} in the reference-mode
  // normalisation: Psi = (T, R + E2), Psi' = i Omega (T, R) - i Omega* (0, E2).
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ek(0.02, 20.0), er(0.05, 10.0);
  for (CoulombModel model : {kAtomic, CoulombModel{-0.7, 1.0, 1.3}}) {
    for (int j = 0; j < 30; ++j) {
      ExtensionSpec s = random_spec(rng);
      double E = ek(rng), ref = er(rng);
      auto r = scattering(model, s, E, ref);
      ScatterChannel ch = scatter_channel(model, E);
      Complex om = omega_factor(ch, rho_factor(ref, E, model));
      Complex e2 = std::exp(2.0 * kI * ch.eta0);
      BoundaryPair bp{Vec2(r.T, r.R + e2), Vec2(kI * om * r.T, kI * om * r.R - kI * std::conj(om) * e2)};
      CHECK(connection_residual(recompose(s), bp, s.L0).norm() < 1e-11);
    }
  }
}

TEST_CASE("Dirichlet on one channel with mu = 0 reflects totally") {
  auto r = scattering(kAtomic, ExtensionSpec{kPi, 1.0, 0.0, 0.0, 1.0}, 2.0);
  CHECK(std::abs(r.T) == 0.0);
  CHECK(std::abs(r.R) == doctest::Approx(1.0).epsilon(1e-14));
}
