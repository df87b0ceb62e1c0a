#include <cmath>
#include <random>

#include "doctest.h"
#include "ssae/errors.hpp"
#include "ssae/generic.hpp"
#include "ssae/potentials.hpp"
#include "ssae/specfun.hpp"

using namespace ssae;
using namespace ssae::generic;

namespace {
constexpr double kPi = 3.14159265358979323846;

// 5-point second derivative of psi from short integrations around x
double residual(const CustomPotential& pot, double E, const Sample& s) {
  double h = 1e-3 * s.x;
  double d[4];
  const int off[4] = {-2, -1, 1, 2};
  for (int i = 0; i < 4; ++i) {
    auto sol = integrate_halfline(pot, E, s.x, s.psi, s.dpsi, s.x + off[i] * h);
    d[i] = sol.samples.back().dpsi;
  }
  double dd = (d[0] - 8.0 * d[1] + 8.0 * d[2] - d[3]) / (12.0 * h);
  double rhs = 2.0 * pot.m / (pot.hbar * pot.hbar) * (pot.v(s.x) - E) * s.psi;
  return std::abs(dd - rhs) / std::max(1.0, std::abs(rhs));
}

Mat2 random_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  double q[4], norm = 0.0;
  for (double& v : q) {
    v = n(rng);
    norm += v * v;
  }
  norm = std::sqrt(norm);
  Complex a(q[0] / norm, q[1] / norm), b(q[2] / norm, q[3] / norm);
  Mat2 v;
  v << a, b, -std::conj(b), std::conj(a);
  return v;
}

ExtensionMatrix with_phases(const Mat2& v, double tp, double tm) {
  Mat2 d = Mat2::Zero();
  d(0, 0) = std::exp(Complex(0.0, tp));
  d(1, 1) = std::exp(Complex(0.0, tm));
  return ExtensionMatrix(v.adjoint() * d * v);
}
}  // namespace

TEST_CASE("Frobenius exponents and seeds") {
  auto osc = potentials::oscinv(oscillator::OscillatorModel{1.0, 1.25 / 8.0, 1.0, 1.0});
  CHECK(osc.frobenius.s1 == doctest::Approx(1.25).epsilon(1e-14));
  CHECK(osc.frobenius.s2 == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK_NOTHROW(osc.validate());

  auto cou = potentials::coulomb(coulomb::CoulombModel{});
  CHECK(cou.frobenius.s1 == 1.0);
  CHECK(cou.frobenius.s2 == 0.0);
  CHECK(cou.frobenius.log_flag);
  // F2 = 1 - 2 x ln x + O(x^2 ln x)
  Seed sc = frobenius_start(cou, -0.3, 1e-5);
  CHECK(sc.f2 == doctest::Approx(1.0 - 2e-5 * std::log(1e-5)).epsilon(1e-8));

  auto fr = potentials::free_particle();
  Seed sd = frobenius_start(fr, 0.0, 0.01);
  CHECK(sd.f1 == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(sd.df1 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sd.f2 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sd.df2 == 0.0);

  auto bad = cou;
  bad.frobenius.log_flag = false;
  CHECK_THROWS_AS(bad.validate(), SeriesFailure);
  bad = osc;
  bad.frobenius.s1 = 1.3;
  CHECK_THROWS_AS(bad.validate(), SeriesFailure);
  bad = osc;
  bad.v = [](double x) { return x > 0 ? x * x : 0.0; };
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("harmonic ground state is the Gaussian") {
  auto h = potentials::harmonic();
  Seed sd = frobenius_start(h, 0.5, h.eps);
  auto sol = integrate_halfline(h, 0.5, sd.x, sd.f2, sd.df2, 4.0);
  double worst = 0.0;
  for (const auto& s : sol.samples) worst = std::max(worst, std::abs(s.psi - std::exp(-0.5 * s.x * s.x)));
  CHECK(worst < 1e-8);
}

TEST_CASE("regular oscillator solution from the s1 seed") {
  auto om = oscillator::OscillatorModel::from_a(0.75);
  auto pot = potentials::oscinv(om);
  double c1 = om.c1(), s1 = pot.frobenius.s1;
  for (double lam : {c1, 2.3}) {
    Seed sd = frobenius_start(pot, lam, pot.eps);
    auto sol = integrate_halfline(pot, lam, sd.x, sd.f1, sd.df1, 3.0);
    double worst = 0.0;
    for (const auto& s : sol.samples) {
      double ref = std::pow(s.x, s1) * std::exp(-0.5 * s.x * s.x) *
                   specfun::kummer_f(0.5 * (c1 - lam), c1, s.x * s.x).real();
      worst = std::max(worst, std::abs(s.psi - ref) / std::max(1e-3, std::abs(ref)));
    }
    CHECK(worst < 1e-7);
  }
}

TEST_CASE("ODE residual at interior samples") {
  auto pot = potentials::oscinv_gauss(oscillator::OscillatorModel::from_a(0.7), 0.1);
  Seed sd = frobenius_start(pot, 1.3, pot.eps);
  auto sol = integrate_halfline(pot, 1.3, sd.x, sd.f2, sd.df2, 4.0);
  REQUIRE(sol.samples.size() > 25);
  std::size_t stride = sol.samples.size() / 21;
  for (int i = 1; i <= 20; ++i) CHECK(residual(pot, 1.3, sol.samples[i * stride]) < 1e-9);
}

TEST_CASE("decay ratio of the oscillator") {
  auto om = oscillator::OscillatorModel::from_a(0.75);
  auto pot = potentials::oscinv(om);
  for (int n = 0; n < 3; ++n) {
    CHECK(std::abs(decay_ratio(pot, om.c1() + 2 * n)) < 1e-9);
    CHECK(std::abs(1.0 / decay_ratio(pot, om.c2() + 2 * n)) < 1e-9);
  }
  // B/A = -Gamma(c1) Gamma((c2-l)/2) / (Gamma(c2) Gamma((c1-l)/2)) with s = 1
  for (double lam : {-0.7, 0.6, 1.2, 3.1}) {
    double expect = -std::tgamma(om.c1()) / std::tgamma(om.c2()) *
                    specfun::gamma_ratio(0.5 * (om.c2() - lam), 0.5 * (om.c1() - lam));
    CHECK(decay_ratio(pot, lam) == doctest::Approx(expect).epsilon(1e-8));
  }
}

TEST_CASE("no decaying solution in the continuum") {
  auto cou = potentials::coulomb(coulomb::CoulombModel{});
  CHECK_THROWS_AS(decay_ratio(cou, 0.5), NoDecaySeparation);
  CHECK_THROWS_AS(decay_ratio(potentials::free_particle(), -1.0, 0.5), NoDecaySeparation);
}

TEST_CASE("xi against the closed forms") {
  auto om = oscillator::OscillatorModel::from_a(0.75, 2.0);
  auto po = potentials::oscinv(om);
  auto mo = potentials::oscillator_modes(om);
  for (double lam : {-2.0, 0.1, 0.9, 2.6, 5.0})
    CHECK(xi_of_energy(po, lam * 2.0, mo) == doctest::Approx(oscillator::xi_bound(lam, om)).epsilon(1e-6));

  for (coulomb::CoulombModel cm : {coulomb::CoulombModel{}, coulomb::CoulombModel{-0.7, 1.0, 1.0},
                                   coulomb::CoulombModel{1.3, 0.8, 1.1}}) {
    double ref = -0.2;
    auto pc = potentials::coulomb(cm);
    auto mc = potentials::coulomb_modes(cm, ref);
    for (double E : {-2.5, -0.4, -0.07}) {
      double closed = coulomb::xi_bound(coulomb::bound_channel(cm, E), ref, cm);
      CHECK(xi_of_energy(pc, E, mc) == doctest::Approx(closed).epsilon(1e-6));
    }
  }
}

TEST_CASE("xi collapses when the decaying solution is pure F1") {
  auto om = oscillator::OscillatorModel::from_a(0.6);
  auto pot = potentials::oscinv(om);
  auto modes = default_modes(pot, 0.0);
  // alpha = 0: xi = W[F1, phi2] / W[F1, phi1], and phi1 = F1 makes it a pole
  CHECK(std::abs(boundary_data(pot, om.c1(), modes).P) < 1e-9);
  CHECK(std::abs(boundary_data(pot, om.c2(), modes).Q) < 1e-9);
}

TEST_CASE("reference modes have a constant unit Wronskian") {
  auto om = oscillator::OscillatorModel::from_a(0.8);
  auto pot = potentials::oscinv(om);
  for (const ReferenceModes& m : {potentials::oscillator_modes(om), default_modes(pot, 1.7)}) {
    CHECK(m.wronskian(pot) == doctest::Approx(1.0).epsilon(1e-14));
    // beyond a few oscillator lengths both modes grow like e^{x^2/2} and
    // the Wronskian is a difference of large products
    auto [p1, p2] = sample_reference_modes(pot, m, 3.5);
    double worst = 0.0;
    for (std::size_t i = 0; i < p1.samples.size(); ++i) {
      const auto &a = p1.samples[i], &b = p2.samples[i];
      worst = std::max(worst, std::abs(a.psi * b.dpsi - a.dpsi * b.psi - 1.0));
      // parity assembly: odd phi1, even phi2 give the same Wronskian at -x
      double wl = (-a.psi) * (-b.dpsi) - a.dpsi * b.psi;
      CHECK(wl == doctest::Approx(a.psi * b.dpsi - a.dpsi * b.psi).epsilon(1e-15));
    }
    CHECK(worst < 1e-7);
  }
  coulomb::CoulombModel cm;
  auto pc = potentials::coulomb(cm);
  auto [c1, c2] = sample_reference_modes(pc, potentials::coulomb_modes(cm, -0.3), 20.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < c1.samples.size(); ++i)
    worst = std::max(worst, std::abs(c1.samples[i].psi * c2.samples[i].dpsi - c1.samples[i].dpsi * c2.samples[i].psi - 1.0));
  CHECK(worst < 1e-7);
}

TEST_CASE("Coulomb Friedrichs spectrum from the ODE engine") {
  coulomb::CoulombModel cm;
  auto pc = potentials::coulomb(cm);
  SpectrumOptions opt;
  opt.window = {-0.7, -0.02};
  auto r = spectrum(pc, ExtensionSpec{kPi, kPi, 0.0, 0.0, 1.0}, potentials::coulomb_modes(cm, -0.2), opt);
  for (int n = 1; n <= 4; ++n) {
    CHECK(r.levels[n - 1].energy == doctest::Approx(-0.5 / (n * n)).epsilon(1e-6));
    CHECK(r.levels[n - 1].degeneracy == 2);
  }
}

TEST_CASE("oracle equivalence with the oscillator module") {
  auto om = oscillator::OscillatorModel::from_a(0.75);
  auto pot = potentials::oscinv(om);
  auto modes = potentials::oscillator_modes(om);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ang(0.0, 2 * kPi), half(0.0, kPi), len(0.5, 2.0);
  for (int i = 0; i < 5; ++i) {
    ExtensionSpec s{ang(rng), ang(rng), half(rng), ang(rng), len(rng)};
    auto closed = oscillator::bound_spectrum(om, s, 4);
    SpectrumOptions opt;
    opt.window = {std::min(-3.0, closed.levels[0].energy - 1.0), 8.0};
    auto gen = spectrum(pot, s, modes, opt);
    for (int j = 0; j < 4; ++j)
      CHECK(gen.levels[j].energy == doctest::Approx(closed.levels[j].energy).epsilon(1e-6));
  }
}

TEST_CASE("swapping the eigenphases leaves the spectrum unchanged") {
  auto om = oscillator::OscillatorModel::from_a(0.65);
  auto pot = potentials::oscinv(om);
  auto modes = potentials::oscillator_modes(om);
  SpectrumOptions opt;
  opt.window = {-4.0, 8.0};
  auto a = spectrum(pot, ExtensionSpec{0.4, 2.8, 0.0, 0.0, 1.0}, modes, opt);
  auto b = spectrum(pot, ExtensionSpec{2.8, 0.4, 0.0, 0.0, 1.0}, modes, opt);
  for (int j = 0; j < 4; ++j) CHECK(a.levels[j].energy == doctest::Approx(b.levels[j].energy).epsilon(1e-12));
}

TEST_CASE("matrix route depends only on the eigenphases") {
  auto om = oscillator::OscillatorModel::from_a(0.75);
  auto pot = potentials::oscinv(om);
  auto modes = potentials::oscillator_modes(om);
  SpectrumOptions opt;
  opt.window = {-4.0, 8.0};
  auto base = spectrum_matrix(pot, with_phases(Mat2::Identity(), 0.7, 2.1), 1.0, modes, opt);
  auto closed = oscillator::bound_spectrum(om, ExtensionSpec{0.7, 2.1, 0.0, 0.0, 1.0}, 4);
  for (int j = 0; j < 4; ++j) CHECK(base[j] == doctest::Approx(closed.levels[j].energy).epsilon(1e-7));
  std::mt19937_64 rng(12);
  for (int i = 0; i < 3; ++i) {
    auto r = spectrum_matrix(pot, with_phases(random_su2(rng), 0.7, 2.1), 1.0, modes, opt);
    for (int j = 0; j < 4; ++j) CHECK(r[j] == doctest::Approx(base[j]).epsilon(1e-7));
  }
}

TEST_CASE("tabulated potential reproduces the analytic one") {
  auto om = oscillator::OscillatorModel::from_a(0.75);
  std::vector<double> reg;
  double h = 0.01;
  for (int i = 0; i <= 1200; ++i) reg.push_back(0.5 * (i * h) * (i * h));
  auto tab = potentials::tabulated(2.0 * om.g, 0.0, h, reg);
  CHECK_NOTHROW(tab.validate());
  CHECK(tab.frobenius.s1 == doctest::Approx(1.25));
  auto modes = potentials::oscillator_modes(om);
  for (double lam : {0.1, 0.9, 2.6})
    CHECK(xi_of_energy(tab, lam, modes) == doctest::Approx(oscillator::xi_bound(lam, om)).epsilon(1e-5));
}

TEST_CASE("probability current") {
  CHECK(probability_current(Complex(0.3), Complex(-1.2)) == 0.0);
  double k = 1.7, x = 0.4;
  Complex psi = std::exp(Complex(0.0, k * x));
  CHECK(probability_current(psi, Complex(0.0, k) * psi, 1.0, 2.0) == doctest::Approx(k / 2.0).epsilon(1e-15));
  // a bound state of a separated extension is real up to a global phase
  auto om = oscillator::OscillatorModel::from_a(0.75);
  auto pot = potentials::oscinv(om);
  double lam = oscillator::bound_spectrum(om, ExtensionSpec{0.9, 2.0, 0.0, 0.0, 1.0}, 1).levels[0].energy;
  Seed sd = frobenius_start(pot, lam, pot.eps);
  Complex g = std::exp(Complex(0.0, 0.8));
  CHECK(std::abs(probability_current(g * sd.f1, g * sd.df1)) < 1e-10);
}

TEST_CASE("log-spaced grid resolves a deep level and the accumulation at zero") {
  coulomb::CoulombModel cm;
  auto pc = potentials::coulomb(cm);
  auto modes = potentials::coulomb_modes(cm, -0.2);
  ExtensionSpec s{3.0, 1.2, 0.4, 2.0, 1.0};
  coulomb::BoundOptions bo;
  bo.count = 5;
  bo.ref_E = -0.2;
  auto closed = coulomb::bound_spectrum(cm, s, bo);
  REQUIRE(closed.levels[0].energy < -10.0);
  SpectrumOptions opt;
  opt.count = 5;
  opt.window = {-1e4, -0.02};
  opt.log_spacing = true;
  auto gen = spectrum(pc, s, modes, opt);
  for (int j = 0; j < 5; ++j) CHECK(gen.levels[j].energy == doctest::Approx(closed.levels[j].energy).epsilon(1e-7));
  opt.window = {-1.0, 0.5};
  CHECK_THROWS_AS(spectrum(pc, s, modes, opt), ConfigError);
}
