#include "ssae/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "ssae/coulomb.hpp"
#include "ssae/errors.hpp"
#include "ssae/generic.hpp"
#include "ssae/oscillator.hpp"
#include "ssae/potentials.hpp"
#include "ssae/specfun.hpp"

namespace ssae::verify {

namespace {

constexpr double kPi = 3.14159265358979323846;

using Rng = std::mt19937_64;

ExtensionSpec random_spec(Rng& rng) {
  std::uniform_real_distribution<double> ang(0.0, 2 * kPi), half(0.0, kPi), len(0.5, 2.0);
  ExtensionSpec s;
  s.theta_plus = ang(rng);
  s.theta_minus = ang(rng);
  s.mu = half(rng);
  s.nu = ang(rng);
  s.L0 = len(rng);
  return s;
}

// Haar-distributed SU(2) from a normalised Gaussian quaternion
Mat2 random_su2(Rng& rng) {
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

double rel(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

struct Acc {
  double worst = 0.0;
  bool ok = true;
  std::ostringstream note;
  void add(double dev) { worst = std::max(worst, std::isnan(dev) ? HUGE_VAL : dev); }
  void fail(const std::string& why) {
    ok = false;
    note << why << "; ";
  }
};

CheckResult finish(const char* name, Acc& a, double tol, const std::string& detail) {
  CheckResult r;
  r.name = name;
  r.metric = a.worst;
  r.tolerance = tol;
  r.passed = a.ok && a.worst < tol;
  r.detail = a.note.str() + detail;
  return r;
}

// 1
CheckResult friedrichs(const Options&) {
  Acc a;
  auto r = coulomb::bound_spectrum(coulomb::CoulombModel{}, ExtensionSpec{kPi, kPi, 0.0, 0.0, 1.0});
  for (int n = 1; n <= 5; ++n) {
    a.add(rel(r.levels[n - 1].energy, -0.5 / (n * n)));
    if (r.levels[n - 1].degeneracy != 2) a.fail("level " + std::to_string(n) + " not doubly degenerate");
  }
  return finish("friedrichs", a, 1e-8, "U=-I, hbar=m=e2=1, 5 levels vs -1/(2n^2), relative");
}

// 2
CheckResult oscillator_special(const Options&) {
  Acc a;
  auto m = oscillator::OscillatorModel::from_a(0.75);
  auto up = oscillator::bound_spectrum(m, ExtensionSpec{0.0, 0.0, 0.0, 0.0, 1.0}, 5);
  auto dn = oscillator::bound_spectrum(m, ExtensionSpec{kPi, kPi, 0.0, 0.0, 1.0}, 5);
  auto mix = oscillator::bound_spectrum(m, ExtensionSpec{0.0, kPi, 0.0, 0.0, 1.0}, 10);
  for (int n = 0; n < 5; ++n) {
    a.add(std::abs(*up.levels[n].lambda - (2 * n + 0.25)));
    a.add(std::abs(*dn.levels[n].lambda - (2 * n + 1.75)));
    a.add(std::abs(*mix.levels[2 * n].lambda - (2 * n + 0.25)));
    a.add(std::abs(*mix.levels[2 * n + 1].lambda - (2 * n + 1.75)));
  }
  return finish("oscillator_special", a, 1e-8, "a=0.75; U=I, U=-I, U=diag(1,-1); absolute in lambda");
}

// 3
CheckResult ho_limit(const Options&) {
  Acc a;
  auto r = oscillator::bound_spectrum(oscillator::OscillatorModel::from_a(0.5 + 1e-6),
                                      decompose(ExtensionMatrix::sigma1(), 1.0), 6);
  for (int n = 0; n < 6; ++n) a.add(std::abs(r.levels[n].energy - (n + 0.5)));
  return finish("ho_limit", a, 1e-4, "U=sigma1, a=0.5+1e-6, 6 levels vs (n+1/2) hbar omega");
}

// 4
struct TheoremModel {
  std::string name;
  generic::CustomPotential pot;
  generic::ReferenceModes modes;
  generic::SpectrumOptions opt;
};

std::vector<TheoremModel> theorem_models(const Options& o) {
  std::vector<TheoremModel> out;
  generic::SpectrumOptions base;
  base.count = 4;
  if (o.custom) {
    if (!o.custom->window) throw ConfigError("theorem check: the custom model needs a window");
    auto opt = base;
    opt.window = *o.custom->window;
    out.push_back({o.custom->pot.name, o.custom->pot, generic::default_modes(o.custom->pot, o.custom->ref_energy), opt});
    return out;
  }
  coulomb::CoulombModel cm;
  auto copt = base;
  copt.window = {-50.0, -0.02};
  copt.log_spacing = true;
  out.push_back({"coulomb", potentials::coulomb(cm), potentials::coulomb_modes(cm, -0.2), copt});
  auto om = oscillator::OscillatorModel::from_a(0.75);
  auto oopt = base;
  oopt.window = {-4.0, 8.0};
  out.push_back({"oscinv", potentials::oscinv(om), potentials::oscillator_modes(om), oopt});
  out.push_back({"oscinv_gauss(0.1)", potentials::oscinv_gauss(om, 0.1), potentials::oscillator_modes(om), oopt});
  return out;
}

CheckResult theorem(const Options& o) {
  Acc a;
  const double tp = 0.7, tm = 2.1;
  int draws = o.trials.value_or(10);
  Rng rng(o.seed);
  std::ostringstream d;
  for (const auto& m : theorem_models(o)) {
    std::vector<std::vector<double>> spectra;
    std::vector<Mat2> mats;
    for (int i = 0; i < draws; ++i) {
      ExtensionMatrix u = with_phases(random_su2(rng), tp, tm);
      mats.push_back(u.matrix());
      spectra.push_back(generic::spectrum_matrix(m.pot, u, 1.0, m.modes, m.opt));
    }
    double mat_spread = 0.0;
    for (const auto& u : mats) mat_spread = std::max(mat_spread, (u - mats[0]).cwiseAbs().maxCoeff());
    double worst = 0.0;
    for (int j = 0; j < 4; ++j) {
      auto [lo, hi] = std::minmax_element(spectra.begin(), spectra.end(),
                                          [j](const auto& x, const auto& y) { return x[j] < y[j]; });
      worst = std::max(worst, ((*hi)[j] - (*lo)[j]) / std::abs((*lo)[j]));
    }
    a.add(worst);
    d << m.name << ": " << worst << " (matrices differ by up to " << mat_spread << "); ";
  }
  d << draws << " random SU(2) at eigenphases (0.7, 2.1), first 4 levels, relative spread";
  return finish("theorem", a, 1e-6, d.str());
}

std::vector<double> k_grid() {
  std::vector<double> k;
  for (int i = 0; i < 20; ++i) k.push_back(0.1 + (5.0 - 0.1) * i / 19.0);
  return k;
}

// 5
CheckResult unitarity(const Options& o) {
  Acc a;
  coulomb::CoulombModel cm;
  int draws = o.trials.value_or(50);
  Rng rng(o.seed + 5);
  std::uniform_real_distribution<double> er(0.05, 10.0), ang(0.0, 2 * kPi);
  double worst_t = 0.0;
  for (int j = 0; j < draws; ++j) {
    ExtensionSpec s = random_spec(rng);
    double ref = er(rng);
    ExtensionSpec sep{ang(rng), ang(rng), 0.0, 0.0, s.L0};
    for (double k : k_grid()) {
      double E = 0.5 * k * k;
      a.add(coulomb::scattering(cm, s, E, ref).unitarity_defect);
      auto r = coulomb::scattering(cm, sep, E, ref);
      auto rm = coulomb::scattering_matrix_form(cm, recompose(sep), sep.L0, E, ref);
      worst_t = std::max({worst_t, std::abs(r.T), std::abs(rm.T)});
    }
  }
  if (!(worst_t < 1e-12)) a.fail("diagonal extension transmits, |T| = " + io::fmt(worst_t));
  std::ostringstream d;
  d << draws << " extensions x 20 k in [0.1, 5]; max |T| for diagonal U: " << worst_t;
  return finish("unitarity", a, 1e-9, d.str());
}

// 6
CheckResult closed_vs_matrix(const Options& o) {
  Acc a;
  coulomb::CoulombModel cm;
  int draws = o.trials.value_or(50);
  Rng rng(o.seed + 6);
  std::uniform_real_distribution<double> er(0.05, 10.0);
  for (int j = 0; j < draws; ++j) {
    ExtensionSpec s = random_spec(rng);
    double ref = er(rng);
    auto u = recompose(s);
    for (double k : k_grid()) {
      double E = 0.5 * k * k;
      auto c = coulomb::scattering(cm, s, E, ref);
      auto m = coulomb::scattering_matrix_form(cm, u, s.L0, E, ref);
      for (Complex d : {c.T - m.T, c.R - m.R}) a.add(std::max(std::abs(d.real()), std::abs(d.imag())));
    }
  }
  return finish("closed_vs_matrix", a, 1e-10,
                std::to_string(draws) + " extensions x 20 k in [0.1, 5]; componentwise T and R");
}

// 7
CheckResult oracle(const Options& o) {
  Acc a;
  int draws = o.trials.value_or(5);
  Rng rng(o.seed + 7);
  std::ostringstream d;

  coulomb::CoulombModel cm;
  auto pc = potentials::coulomb(cm);
  auto modes_c = potentials::coulomb_modes(cm, -0.2);
  coulomb::BoundOptions bo;
  bo.count = 4;
  bo.ref_E = -0.2;
  double wc = 0.0;
  for (int i = 0; i < draws; ++i) {
    ExtensionSpec s = random_spec(rng);
    auto closed = coulomb::bound_spectrum(cm, s, bo);
    generic::SpectrumOptions opt;
    opt.count = 4;
    opt.window = {std::min(-2.0, 4.0 * closed.levels[0].energy), -0.02};
    opt.log_spacing = true;
    auto gen = generic::spectrum(pc, s, modes_c, opt);
    for (int j = 0; j < 4; ++j) wc = std::max(wc, rel(gen.levels[j].energy, closed.levels[j].energy));
  }
  auto om = oscillator::OscillatorModel::from_a(0.75);
  auto po = potentials::oscinv(om);
  auto modes_o = potentials::oscillator_modes(om);
  double wo = 0.0;
  for (int i = 0; i < draws; ++i) {
    ExtensionSpec s = random_spec(rng);
    auto closed = oscillator::bound_spectrum(om, s, 4);
    generic::SpectrumOptions opt;
    opt.count = 4;
    opt.window = {std::min(-3.0, closed.levels[0].energy - 1.0), closed.levels[3].energy + 2.0};
    auto gen = generic::spectrum(po, s, modes_o, opt);
    for (int j = 0; j < 4; ++j) wo = std::max(wo, rel(gen.levels[j].energy, closed.levels[j].energy));
  }
  a.add(wc);
  a.add(wo);
  d << "coulomb: " << wc << "; oscinv(a=0.75): " << wo << "; " << draws
    << " random extensions each, first 4 levels, relative";
  return finish("oracle", a, 1e-6, d.str());
}

// 8
CheckResult specfun_fixtures(const Options& o) {
  Acc a;
  std::string path = o.fixture_dir + "/specfun_fixtures.json";
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read fixtures at " + path);
  auto fx = nlohmann::json::parse(in);
  auto c = [](const nlohmann::json& j) { return Complex(j.at(0).get<double>(), j.at(1).get<double>()); };
  auto err = [](Complex got, Complex want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); };
  std::map<std::string, std::function<Complex(const nlohmann::json&)>> fns{
      {"kummer_f", [&](const auto& p) { return specfun::kummer_f(c(p["alpha"]), c(p["gamma"]), c(p["z"])); }},
      {"whittaker_m", [&](const auto& p) { return specfun::whittaker_m(c(p["alpha"]), c(p["z"])); }},
      {"whittaker_w", [&](const auto& p) { return specfun::whittaker_w(c(p["alpha"]), c(p["z"])); }},
      {"digamma", [&](const auto& p) { return specfun::digamma(c(p["z"])); }}};
  std::ostringstream d;
  for (const auto& [name, f] : fns) {
    const auto& pts = fx.at(name);
    if (pts.size() < 25) a.fail(name + " has fewer than 25 fixture points");
    double w = 0.0;
    for (const auto& p : pts) w = std::max(w, err(f(p), c(p["value"])));
    a.add(w);
    d << name << ": " << w << " (" << pts.size() << " points); ";
  }
  d << "relative";
  return finish("specfun", a, 1e-9, d.str());
}

// 9
double mode_wronskian_dev(const generic::CustomPotential& pot, const generic::ReferenceModes& m, double x_max) {
  auto [p1, p2] = generic::sample_reference_modes(pot, m, x_max);
  double worst = std::abs(m.wronskian(pot) - 1.0);
  for (std::size_t i = 0; i < p1.samples.size(); ++i) {
    const auto &u = p1.samples[i], &v = p2.samples[i];
    worst = std::max(worst, std::abs(u.psi * v.dpsi - u.dpsi * v.psi - 1.0));
  }
  return worst;
}

CheckResult wronskian(const Options& o) {
  Acc a;
  std::ostringstream d;
  // Ranges cover the classically allowed region of the first four levels
  // (oscillator lambda <= 8, Coulomb alpha <= 3).  Further out both modes
  // grow exponentially and the unit Wronskian is the difference of two
  // large products.
  auto om = oscillator::OscillatorModel::from_a(0.75);
  double w1 = mode_wronskian_dev(potentials::oscinv(om), potentials::oscillator_modes(om), 4.0);
  double w2 = mode_wronskian_dev(potentials::oscinv_gauss(om, 0.1), potentials::oscillator_modes(om), 4.0);
  coulomb::CoulombModel cm;
  double w3 = mode_wronskian_dev(potentials::coulomb(cm), potentials::coulomb_modes(cm, -0.2), 30.0);
  for (double w : {w1, w2, w3}) a.add(w);
  d << "mode Wronskian: oscinv [eps,4] " << w1 << ", oscinv_gauss [eps,4] " << w2 << ", coulomb [eps,30] " << w3;

  // norm equality |Psi+| = |Psi-| on condition-satisfying boundary pairs
  Rng rng(o.seed + 9);
  std::normal_distribution<double> n;
  int pairs = o.trials.value_or(100);
  double wn = 0.0;
  for (int i = 0; i < pairs; ++i) {
    ExtensionSpec s = random_spec(rng);
    ExtensionMatrix u = recompose(s);
    Vec2 pp(Complex(n(rng), n(rng)), Complex(n(rng), n(rng)));
    Vec2 pm = u.matrix() * pp;
    BoundaryPair bp{0.5 * (pp + pm), (pp - pm) / (2.0 * Complex(0.0, s.L0))};
    double scale = pp.norm();
    if (connection_residual(u, bp, s.L0).norm() > 1e-12 * scale) a.fail("boundary pair violates the condition");
    wn = std::max(wn, std::abs(bp.psi_plus(s.L0).norm() - bp.psi_minus(s.L0).norm()) / scale);
  }
  if (!(wn < 1e-12)) a.fail("norm equality off by " + io::fmt(wn));
  d << "; norm equality over " << pairs << " pairs: " << wn << " (tolerance 1e-12)";
  return finish("wronskian", a, 1e-7, d.str());
}

const std::map<std::string, CheckResult (*)(const Options&)>& registry() {
  static const std::map<std::string, CheckResult (*)(const Options&)> r{
      {"friedrichs", friedrichs}, {"oscillator_special", oscillator_special},
      {"ho_limit", ho_limit},     {"theorem", theorem},
      {"unitarity", unitarity},   {"closed_vs_matrix", closed_vs_matrix},
      {"oracle", oracle},         {"specfun", specfun_fixtures},
      {"wronskian", wronskian}};
  return r;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"friedrichs", "oscillator_special", "ho_limit",
                                              "theorem",    "unitarity",          "closed_vs_matrix",
                                              "oracle",     "specfun",            "wronskian"};
  return names;
}

CheckResult run_check(const std::string& name, const Options& opt) {
  auto it = registry().find(name);
  if (it == registry().end()) throw ConfigError("unknown check '" + name + "'");
  auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = it->second(opt);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    r.name = name;
    r.passed = false;
    r.metric = HUGE_VAL;
    r.detail = std::string("solver error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<CheckResult> run(const std::vector<std::string>& names, const Options& opt) {
  std::vector<CheckResult> out;
  for (const auto& n : names) out.push_back(run_check(n, opt));
  return out;
}

nlohmann::json report_json(const std::vector<CheckResult>& results, const Options& opt) {
  nlohmann::json checks = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    checks.push_back({{"name", r.name},
                      {"passed", r.passed},
                      {"max_deviation", std::isfinite(r.metric) ? nlohmann::json(r.metric) : nlohmann::json(nullptr)},
                      {"tolerance", r.tolerance},
                      {"detail", r.detail}});
  }
  nlohmann::json cfg = {{"seed", opt.seed}};
  cfg["trials"] = opt.trials ? nlohmann::json(*opt.trials) : nlohmann::json(nullptr);
  cfg["custom_model"] = opt.custom ? nlohmann::json(opt.custom->pot.name) : nlohmann::json(nullptr);
  return {{"command", "verify"}, {"config", cfg}, {"passed", all}, {"checks", checks}};
}

}  // namespace ssae::verify
