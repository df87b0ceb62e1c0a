#include "ssae/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "ssae/coulomb.hpp"
#include "ssae/errors.hpp"
#include "ssae/generic.hpp"
#include "ssae/io.hpp"
#include "ssae/oscillator.hpp"
#include "ssae/potentials.hpp"
#include "ssae/verify.hpp"

namespace ssae::cli {

namespace {

constexpr double kPi = 3.14159265358979323846;
using io::json;

std::vector<double> parse_list(const std::string& s, std::size_t want, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw ConfigError(what + ": '" + tok + "' is not a number");
    }
    if (used != tok.size()) throw ConfigError(what + ": '" + tok + "' is not a number");
    out.push_back(v);
  }
  if (want && out.size() != want)
    throw ConfigError(what + ": expected " + std::to_string(want) + " comma-separated values");
  return out;
}

// Typed angles within 1e-7 of a multiple of pi mean that multiple: near
// theta = pi a level runs off to -infinity, so "3.14159265" taken literally
// would add a level near -1e11.
double snap_angle(double t) {
  double k = std::round(t / kPi);
  return std::abs(t - k * kPi) < 1e-7 ? wrap_angle(k * kPi) : t;
}

struct Units {
  double hbar = 1.0, m = 1.0, e2 = 1.0, omega = 1.0;
};

Units parse_units(const std::string& s) {
  Units u;
  std::map<std::string, double*> keys{{"hbar", &u.hbar}, {"m", &u.m}, {"e2", &u.e2}, {"omega", &u.omega}};
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto eq = tok.find('=');
    if (eq == std::string::npos || !keys.count(tok.substr(0, eq)))
      throw ConfigError("--units: expected hbar=..,m=..,e2=..,omega=.., got '" + tok + "'");
    *keys[tok.substr(0, eq)] = parse_list(tok.substr(eq + 1), 1, "--units")[0];
  }
  if (!(u.hbar > 0 && u.m > 0 && u.omega > 0)) throw ConfigError("--units: hbar, m and omega must be positive");
  return u;
}

// Options shared by the model-driven commands.
struct ModelArgs {
  std::string model;
  bool atomic = false;
  std::string units;
  std::optional<double> a, g, amplitude, ref_energy;
  std::string engine = "auto";
  std::string window;
  int grid = 512;
  int count = 5;

  void add(CLI::App* app, bool with_count = true) {
    app->add_option("--model", model, "coulomb | oscinv | oscinv_gauss | custom:<file>")->required();
    auto* au = app->add_flag("--atomic-units", atomic, "hbar = m = e2 = omega = 1 (the default)");
    app->add_option("--units", units, "explicit constants, e.g. hbar=1,m=1,e2=1,omega=1")->excludes(au);
    app->add_option("--a", a, "oscillator index a in (1/2, 1)");
    app->add_option("--g", g, "oscillator coupling g > 0");
    app->add_option("--amplitude", amplitude, "Gaussian bump height for oscinv_gauss, in hbar omega");
    app->add_option("--ref-energy", ref_energy, "energy of the reference modes");
    app->add_option("--engine", engine, "closed | ode | auto")->check(CLI::IsMember({"auto", "closed", "ode"}));
    app->add_option("--window", window, "energy window lo,hi for the ODE engine");
    app->add_option("--grid", grid, "ODE scan grid points")->check(CLI::Range(8, 1 << 20));
    if (with_count) app->add_option("--count", count, "number of levels")->check(CLI::Range(1, 10000));
  }
};

// Extension given by name, angles or raw matrix; exactly one.
struct ExtensionArgs {
  std::string name, theta, matrix;
  double L0 = 1.0;

  void add(CLI::App* app) {
    auto* e = app->add_option("--extension", name, "I | -I | sx | diag:theta_plus,theta_minus");
    auto* t = app->add_option("--theta", theta, "theta_plus,theta_minus,mu,nu");
    auto* m = app->add_option("--matrix", matrix, "U as re00,im00,re01,im01,re10,im10,re11,im11");
    e->excludes(t)->excludes(m);
    t->excludes(m);
    app->add_option("--L0", L0, "length scale L0 > 0");
  }

  ExtensionSpec spec() const {
    if (!(L0 > 0.0)) throw ConfigError("--L0 must be positive");
    if (!theta.empty()) {
      auto v = parse_list(theta, 4, "--theta");
      ExtensionSpec s{snap_angle(v[0]), snap_angle(v[1]), v[2], v[3], L0};
      s.validate();
      return s;
    }
    if (!matrix.empty()) {
      auto v = parse_list(matrix, 8, "--matrix");
      Mat2 u;
      u << Complex(v[0], v[1]), Complex(v[2], v[3]), Complex(v[4], v[5]), Complex(v[6], v[7]);
      return decompose(ExtensionMatrix(u), L0);
    }
    if (name == "I") return ExtensionSpec{0.0, 0.0, 0.0, 0.0, L0};
    if (name == "-I") return ExtensionSpec{kPi, kPi, 0.0, 0.0, L0};
    if (name == "sx") return decompose(ExtensionMatrix::sigma1(), L0);
    if (name.rfind("diag:", 0) == 0) {
      auto v = parse_list(name.substr(5), 2, "--extension diag");
      ExtensionSpec s{snap_angle(wrap_angle(v[0])), snap_angle(wrap_angle(v[1])), 0.0, 0.0, L0};
      s.validate();
      return s;
    }
    if (name.empty()) throw ConfigError("an extension is required: --extension, --theta or --matrix");
    throw ConfigError("unknown extension '" + name + "'");
  }
};

// A resolved model, ready to produce spectra.
struct Model {
  std::string kind;  // coulomb | oscinv | oscinv_gauss | custom
  Units units;
  coulomb::CoulombModel cm;
  oscillator::OscillatorModel om;
  std::optional<io::CustomModel> custom;
  bool closed = true;
  generic::CustomPotential pot;
  generic::ReferenceModes modes;
  generic::SpectrumOptions gopt;
  std::optional<double> ref_energy;
  json echo;
};

Model resolve(const ModelArgs& a) {
  Model m;
  if (!a.units.empty()) m.units = parse_units(a.units);
  const Units& u = m.units;
  std::string kind = a.model;
  std::string path;
  if (kind.rfind("custom:", 0) == 0) {
    path = kind.substr(7);
    kind = "custom";
  }
  static const std::set<std::string> known{"coulomb", "oscinv", "oscinv_gauss", "custom"};
  if (!known.count(kind)) throw ConfigError("unknown model '" + a.model + "'");
  m.kind = kind;
  m.ref_energy = a.ref_energy;
  if (a.a && a.g) throw ConfigError("give either --a or --g, not both");
  if ((a.a || a.g) && kind != "oscinv" && kind != "oscinv_gauss") throw ConfigError("--a/--g apply to oscinv models");
  if (a.amplitude && kind != "oscinv_gauss") throw ConfigError("--amplitude applies to oscinv_gauss");

  m.echo = {{"model", a.model}, {"units", {{"hbar", u.hbar}, {"m", u.m}, {"e2", u.e2}, {"omega", u.omega}}}};
  if (kind == "coulomb") {
    m.cm = coulomb::CoulombModel{u.e2, u.hbar, u.m};
    m.cm.validate();
  } else if (kind == "oscinv" || kind == "oscinv_gauss") {
    if (a.a)
      m.om = oscillator::OscillatorModel::from_a(*a.a, u.omega, u.hbar, u.m);
    else
      m.om = oscillator::OscillatorModel{u.omega, a.g.value_or(oscillator::OscillatorModel{}.g), u.hbar, u.m};
    m.om.validate();
    m.echo["a"] = oscillator::a_param(m.om);
    m.echo["g"] = m.om.g;
  } else {
    m.custom = io::load_custom(path);
  }

  if (a.engine == "closed" && (kind == "oscinv_gauss" || kind == "custom"))
    throw ConfigError("model '" + kind + "' has no closed form; use --engine ode");
  m.closed = a.engine != "ode" && (kind == "coulomb" || kind == "oscinv");
  m.echo["engine"] = m.closed ? "closed" : "ode";

  if (!m.closed) {
    m.gopt.grid = a.grid;
    if (kind == "coulomb") {
      double ry = 0.5 * m.cm.m * m.cm.e2 * m.cm.e2 / (m.cm.hbar * m.cm.hbar);
      if (!(m.cm.e2 > 0)) throw ConfigError("the ODE engine needs an attractive Coulomb coupling");
      double ref = a.ref_energy.value_or(coulomb::default_bound_reference(m.cm));
      m.ref_energy = ref;
      m.pot = potentials::coulomb(m.cm);
      m.modes = potentials::coulomb_modes(m.cm, ref);
      double top = 0.5 * a.count + 3.0;
      m.gopt.window = {-100.0 * ry, -ry / (top * top)};
      m.gopt.log_spacing = true;
    } else if (kind == "oscinv" || kind == "oscinv_gauss") {
      if (a.ref_energy) throw ConfigError("oscillator reference modes are fixed; --ref-energy does not apply");
      double hw = m.om.hbar * m.om.omega;
      m.pot = kind == "oscinv" ? potentials::oscinv(m.om) : potentials::oscinv_gauss(m.om, a.amplitude.value_or(0.1));
      if (kind == "oscinv_gauss") m.echo["amplitude"] = a.amplitude.value_or(0.1);
      m.modes = potentials::oscillator_modes(m.om);
      m.gopt.window = {-5.0 * hw, (2.0 * a.count + 2.0) * hw};
    } else {
      m.pot = m.custom->pot;
      double ref = a.ref_energy.value_or(m.custom->ref_energy);
      m.ref_energy = ref;
      m.modes = generic::default_modes(m.pot, ref);
      if (m.custom->window) m.gopt.window = *m.custom->window;
      else if (a.window.empty()) throw ConfigError("custom model needs a window (descriptor or --window)");
    }
    if (!a.window.empty()) {
      auto w = parse_list(a.window, 2, "--window");
      m.gopt.window = {w[0], w[1]};
      m.gopt.log_spacing = m.gopt.log_spacing && w[1] < 0.0;
    }
    m.echo["window"] = {m.gopt.window.first, m.gopt.window.second};
  } else if (!a.window.empty()) {
    if (kind != "coulomb") throw ConfigError("--window applies to the Coulomb model or the ODE engine");
    auto w = parse_list(a.window, 2, "--window");
    m.gopt.window = {w[0], w[1]};
    m.echo["window"] = {w[0], w[1]};
  }
  m.echo["ref_energy"] = m.ref_energy ? json(*m.ref_energy) : json(nullptr);
  return m;
}

SpectrumResult compute(const Model& m, const ModelArgs& a, const ExtensionSpec& spec) {
  if (m.closed && m.kind == "coulomb") {
    coulomb::BoundOptions bo;
    bo.count = a.count;
    bo.ref_E = m.ref_energy;
    if (m.echo.contains("window")) bo.window = m.gopt.window;
    return coulomb::bound_spectrum(m.cm, spec, bo);
  }
  if (m.closed) return oscillator::bound_spectrum(m.om, spec, a.count);
  auto opt = m.gopt;
  opt.count = a.count;
  auto r = generic::spectrum(m.pot, spec, m.modes, opt);
  r.model = m.kind;
  if (m.kind == "oscinv" || m.kind == "oscinv_gauss")
    for (auto& l : r.levels) l.lambda = l.energy / (m.om.hbar * m.om.omega);
  return r;
}

void emit(const std::string& format, const std::string& path, const std::string& csv, const json& j) {
  io::write_atomic(path, format == "json" ? j.dump(2) + "\n" : csv);
}

int threads_from_env() {
  int n = int(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* s = std::getenv("SINGULAR_SAE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end == s || *end || v < 1) throw ConfigError("SINGULAR_SAE_THREADS must be a positive integer");
    n = int(std::min<long>(v, 1024));
  }
  return n;
}

std::pair<double, double> angle_range(const std::string& s, const std::string& what) {
  auto v = parse_list(s, 2, what);
  v[0] = snap_angle(v[0]);
  v[1] = snap_angle(v[1]);
  if (!(v[0] >= 0.0 && v[1] < 2 * kPi && v[0] <= v[1])) throw ConfigError(what + " must lie in [0, 2pi) with lo <= hi");
  return {v[0], v[1]};
}

// Long options that take a value; "--opt -x" is rewritten to "--opt=-x" so
// values with a leading minus are not mistaken for flags.
const std::set<std::string> kValueOptions{"--extension", "--theta",  "--matrix",       "--L0",   "--ref-energy",
                                          "--window",    "--a",      "--g",            "--units", "--amplitude",
                                          "--k-min",     "--k-max",  "--mu",           "--nu",   "--theta-plus-range",
                                          "--theta-minus-range"};

std::vector<std::string> join_negative_values(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (kValueOptions.count(args[i]) && i + 1 < args.size() && args[i + 1].size() > 1 && args[i + 1][0] == '-') {
      out.push_back(args[i] + "=" + args[i + 1]);
      ++i;
    } else {
      out.push_back(args[i]);
    }
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& raw_args) {
  CLI::App app{"Spectra and scattering for U(2) point-interaction extensions of singular potentials",
               "singular-sae"};
  app.require_subcommand(1, 1);
  std::string format = "csv", output;
  auto add_output = [&](CLI::App* c) {
    c->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    c->add_option("--output", output, "output file (default: stdout)");
  };

  // spectrum
  auto* sp = app.add_subcommand("spectrum", "bound-state levels for one extension");
  ModelArgs sp_model;
  ExtensionArgs sp_ext;
  sp_model.add(sp);
  sp_ext.add(sp);
  add_output(sp);

  // scatter
  auto* sc = app.add_subcommand("scatter", "Coulomb transmission and reflection over a k grid");
  std::string sc_model = "coulomb", sc_units, sc_form = "closed";
  bool sc_atomic = false;
  ExtensionArgs sc_ext;
  std::optional<double> sc_ref;
  double k_min = 0.1, k_max = 5.0;
  int k_steps = 50;
  sc->add_option("--model", sc_model, "coulomb");
  auto* sc_au = sc->add_flag("--atomic-units", sc_atomic, "hbar = m = e2 = 1 (the default)");
  sc->add_option("--units", sc_units, "explicit constants, e.g. hbar=1,m=1,e2=1")->excludes(sc_au);
  sc->add_option("--ref-energy", sc_ref, "positive reference energy (default: each E_k)");
  sc->add_option("--k-min", k_min, "smallest wave number");
  sc->add_option("--k-max", k_max, "largest wave number");
  sc->add_option("--k-steps", k_steps, "number of k values")->check(CLI::Range(1, 1000000));
  sc->add_option("--form", sc_form, "closed | matrix")->check(CLI::IsMember({"closed", "matrix"}));
  sc_ext.add(sc);
  add_output(sc);

  // sweep
  auto* sw = app.add_subcommand("sweep", "levels over a grid of eigenphases");
  ModelArgs sw_model;
  sw_model.add(sw);
  std::string tp_range, tm_range;
  int steps = 9;
  bool diagonal = false;
  double sw_mu = 0.0, sw_nu = 0.0, sw_L0 = 1.0;
  std::string plot;
  sw->add_option("--theta-plus-range", tp_range, "lo,hi within [0, 2pi)")->required();
  sw->add_option("--theta-minus-range", tm_range, "lo,hi within [0, 2pi) (default: as theta_plus)");
  sw->add_option("--steps", steps, "nodes per axis")->check(CLI::Range(2, 100000));
  sw->add_flag("--diagonal", diagonal, "sweep theta_plus = theta_minus only");
  sw->add_option("--mu", sw_mu, "fixed mu");
  sw->add_option("--nu", sw_nu, "fixed nu");
  sw->add_option("--L0", sw_L0, "fixed L0");
  sw->add_option("--plot", plot, "write an SVG spectral-flow figure");
  add_output(sw);

  // verify
  auto* vf = app.add_subcommand("verify", "run the acceptance checks");
  std::string checks, vf_model;
  std::optional<int> trials;
  std::uint64_t seed = verify::Options{}.seed;
  vf->add_option("--checks", checks, "comma-separated subset of the checks");
  vf->add_option("--trials", trials, "random draws per randomized check")->check(CLI::Range(1, 1000000));
  vf->add_option("--seed", seed, "random seed");
  vf->add_option("--model", vf_model, "custom:<file> replaces the theorem-check models");
  vf->add_option("--output", output, "JSON report file (default: stdout)");

  try {
    auto args = join_negative_values(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (sp->parsed()) {
      Model m = resolve(sp_model);
      ExtensionSpec spec = sp_ext.spec();
      auto r = compute(m, sp_model, spec);
      json cfg = m.echo;
      cfg["count"] = sp_model.count;
      emit(format, output, io::spectrum_csv(r), io::spectrum_json(r, cfg));
      return 0;
    }

    if (sc->parsed()) {
      if (sc_model != "coulomb") throw ConfigError("scatter supports the Coulomb model only");
      Units u = sc_units.empty() ? Units{} : parse_units(sc_units);
      coulomb::CoulombModel cm{u.e2, u.hbar, u.m};
      cm.validate();
      if (!(k_min > 0.0 && k_max >= k_min)) throw ConfigError("need 0 < k-min <= k-max");
      if (sc_ref && !(*sc_ref > 0.0)) throw ConfigError("--ref-energy must be positive for scattering");
      if (k_steps < 2 && k_max > k_min) throw ConfigError("--k-steps must be >= 2 for a range");
      ExtensionSpec spec = sc_ext.spec();
      ExtensionMatrix U = recompose(spec);
      std::vector<io::ScatterRow> rows;
      for (int i = 0; i < k_steps; ++i) {
        double k = k_steps == 1 ? k_min : k_min + (k_max - k_min) * i / (k_steps - 1);
        double E = u.hbar * u.hbar * k * k / (2.0 * u.m);
        auto r = sc_form == "closed" ? coulomb::scattering(cm, spec, E, sc_ref)
                                     : coulomb::scattering_matrix_form(cm, U, spec.L0, E, sc_ref);
        rows.push_back({k, r.T, r.R, r.unitarity_defect});
      }
      json cfg = {{"model", "coulomb"},
                  {"units", {{"hbar", u.hbar}, {"m", u.m}, {"e2", u.e2}}},
                  {"extension", io::extension_json(spec)},
                  {"form", sc_form},
                  {"k", {{"min", k_min}, {"max", k_max}, {"steps", k_steps}}}};
      cfg["ref_energy"] = sc_ref ? json(*sc_ref) : json(nullptr);
      emit(format, output, io::scatter_csv(rows), io::scatter_json(rows, cfg));
      return 0;
    }

    if (sw->parsed()) {
      Model m = resolve(sw_model);
      auto tp = angle_range(tp_range, "--theta-plus-range");
      auto tm = tm_range.empty() ? tp : angle_range(tm_range, "--theta-minus-range");
      if (!(sw_L0 > 0.0)) throw ConfigError("--L0 must be positive");
      std::vector<std::pair<double, double>> nodes;
      auto at = [&](std::pair<double, double> r, int i) { return r.first + (r.second - r.first) * i / (steps - 1); };
      for (int i = 0; i < steps; ++i) {
        if (diagonal)
          nodes.push_back({at(tp, i), at(tp, i)});
        else
          for (int j = 0; j < steps; ++j) nodes.push_back({at(tp, i), at(tm, j)});
      }
      for (auto& [a, b] : nodes) ExtensionSpec{a, b, sw_mu, sw_nu, sw_L0}.validate();

      // work pool: results land in node order whatever the completion order
      std::vector<SpectrumResult> results(nodes.size());
      std::vector<std::exception_ptr> errors(nodes.size());
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (std::size_t i; (i = next++) < nodes.size();) {
          try {
            results[i] = compute(m, sw_model, ExtensionSpec{nodes[i].first, nodes[i].second, sw_mu, sw_nu, sw_L0});
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      };
      int nthreads = std::min<int>(threads_from_env(), int(nodes.size()));
      std::vector<std::thread> pool;
      for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);

      std::vector<io::SweepRow> rows;
      for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t n = 0; n < results[i].levels.size(); ++n)
          rows.push_back({nodes[i].first, nodes[i].second, int(n), results[i].levels[n].energy});
      json cfg = m.echo;
      cfg["count"] = sw_model.count;
      cfg["grid"] = {{"theta_plus_range", {tp.first, tp.second}},
                     {"theta_minus_range", {tm.first, tm.second}},
                     {"steps", steps},
                     {"diagonal", diagonal},
                     {"mu", sw_mu},
                     {"nu", sw_nu},
                     {"L0", sw_L0}};
      if (!plot.empty()) io::write_atomic(plot, io::sweep_svg(rows, "spectral flow: " + sw_model.model));
      emit(format, output, io::sweep_csv(rows), io::sweep_json(rows, cfg));
      return 0;
    }

    // verify
    verify::Options vo;
    vo.seed = seed;
    vo.trials = trials;
    vo.fixture_dir = SSAE_FIXTURE_DIR;
    if (const char* fx = std::getenv("SINGULAR_SAE_FIXTURES")) vo.fixture_dir = fx;
    if (!vf_model.empty()) {
      if (vf_model.rfind("custom:", 0) != 0) throw ConfigError("verify --model takes custom:<file>");
      vo.custom = io::load_custom(vf_model.substr(7));
    }
    std::vector<std::string> names = verify::check_names();
    if (!checks.empty()) {
      names.clear();
      std::stringstream ss(checks);
      for (std::string t; std::getline(ss, t, ',');) names.push_back(t);
    }
    auto results = verify::run(names, vo);
    bool ok = true;
    for (const auto& r : results) {
      ok = ok && r.passed;
      std::cerr << (r.passed ? "PASS " : "FAIL ") << r.name << "  max deviation " << r.metric << " (tolerance "
                << r.tolerance << ")\n";
    }
    io::write_atomic(output, verify::report_json(results, vo).dump(2) + "\n");
    return ok ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const NotUnitary& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const CouplingOutOfRange& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  }
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args);
}

}  // namespace ssae::cli
