#include "ssae/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include "ssae/errors.hpp"
#include "ssae/potentials.hpp"

namespace ssae::io {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);  // no "-0"

  return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content << std::flush;
    return;
  }
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw ConfigError("write to " + tmp.string() + " failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw ConfigError("cannot move output into place at " + path);
  }
}

json extension_json(const ExtensionSpec& s) {
  return {{"theta_plus", s.theta_plus}, {"theta_minus", s.theta_minus}, {"mu", s.mu}, {"nu", s.nu}, {"L0", s.L0}};
}

std::string spectrum_csv(const SpectrumResult& r) {
  std::ostringstream os;
  os << "E,lambda,branch,degeneracy\n";
  for (const auto& l : r.levels)
    os << fmt(l.energy) << ',' << (l.lambda ? fmt(*l.lambda) : "") << ',' << branch_name(l.branch) << ','
       << l.degeneracy << '\n';
  return os.str();
}

json spectrum_json(const SpectrumResult& r, const json& config) {
  json levels = json::array();
  for (const auto& l : r.levels) {
    json e = {{"E", l.energy}, {"branch", branch_name(l.branch)}, {"degeneracy", l.degeneracy}};
    e["lambda"] = l.lambda ? json(*l.lambda) : json(nullptr);
    levels.push_back(e);
  }
  return {{"command", "spectrum"},
          {"model", r.model},
          {"extension", extension_json(r.extension)},
          {"config", config},
          {"levels", levels}};
}

std::string scatter_csv(const std::vector<ScatterRow>& rows) {
  std::ostringstream os;
  os << "k,reT,imT,reR,imR,T2,R2,defect\n";
  for (const auto& r : rows)
    os << fmt(r.k) << ',' << fmt(r.T.real()) << ',' << fmt(r.T.imag()) << ',' << fmt(r.R.real()) << ','
       << fmt(r.R.imag()) << ',' << fmt(std::norm(r.T)) << ',' << fmt(std::norm(r.R)) << ',' << fmt(r.defect) << '\n';
  return os.str();
}

json scatter_json(const std::vector<ScatterRow>& rows, const json& config) {
  json out = json::array();
  for (const auto& r : rows)
    out.push_back({{"k", r.k},
                   {"reT", r.T.real()},
                   {"imT", r.T.imag()},
                   {"reR", r.R.real()},
                   {"imR", r.R.imag()},
                   {"T2", std::norm(r.T)},
                   {"R2", std::norm(r.R)},
                   {"defect", r.defect}});
  return {{"command", "scatter"}, {"config", config}, {"rows", out}};
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "theta_plus,theta_minus,n,E\n";
  for (const auto& r : rows) os << fmt(r.theta_plus) << ',' << fmt(r.theta_minus) << ',' << r.n << ',' << fmt(r.E) << '\n';
  return os.str();
}

json sweep_json(const std::vector<SweepRow>& rows, const json& config) {
  json out = json::array();
  for (const auto& r : rows)
    out.push_back({{"theta_plus", r.theta_plus}, {"theta_minus", r.theta_minus}, {"n", r.n}, {"E", r.E}});
  return {{"command", "sweep"},
          {"config", config},
          {"metadata",
           {{"identification", "(theta_plus, theta_minus) and (theta_minus, theta_plus) give the same spectrum"}}},
          {"rows", out}};
}

std::string sweep_svg(const std::vector<SweepRow>& rows, const std::string& title) {
  // node index along the sweep in first-appearance order
  std::vector<std::pair<double, double>> nodes;
  int nmax = 0;
  double emin = HUGE_VAL, emax = -HUGE_VAL;
  for (const auto& r : rows) {
    std::pair<double, double> key{r.theta_plus, r.theta_minus};
    if (nodes.empty() || nodes.back() != key) nodes.push_back(key);
    nmax = std::max(nmax, r.n);
    emin = std::min(emin, r.E);
    emax = std::max(emax, r.E);
  }
  const double W = 640, H = 420, ml = 60, mr = 20, mt = 30, mb = 40;
  if (!(emax > emin)) emax = emin + 1.0;
  double nx = std::max<double>(1.0, nodes.size() - 1.0);
  auto px = [&](std::size_t i) { return ml + (W - ml - mr) * i / nx; };
  auto py = [&](double e) { return mt + (H - mt - mb) * (emax - e) / (emax - emin); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\">" << title << "</text>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\"" << H - mb
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << ml - 5 << "\" y=\"" << py(emax) + 4 << "\" text-anchor=\"end\" font-size=\"10\">" << fmt(emax).substr(0, 8)
     << "</text>\n";
  os << "<text x=\"" << ml - 5 << "\" y=\"" << py(emin) + 4 << "\" text-anchor=\"end\" font-size=\"10\">" << fmt(emin).substr(0, 8)
     << "</text>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\" font-size=\"11\">sweep node</text>\n";
  for (int n = 0; n <= nmax; ++n) {
    os << "<polyline fill=\"none\" stroke=\"hsl(" << (n * 67) % 360 << ",70%,40%)\" stroke-width=\"1.5\" points=\"";
    std::size_t node = 0;
    std::pair<double, double> cur{NAN, NAN};
    bool first = true;
    for (const auto& r : rows) {
      std::pair<double, double> key{r.theta_plus, r.theta_minus};
      if (!first && key != cur) ++node;
      cur = key;
      first = false;
      if (r.n == n) os << px(node) << ',' << py(r.E) << ' ';
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

namespace {
double num(const json& j, const char* key, double def) { return j.contains(key) ? j.at(key).get<double>() : def; }
}  // namespace

CustomModel parse_custom(const json& j) {
  try {
    if (j.value("type", std::string()) != "custom") throw ConfigError("custom model: \"type\" must be \"custom\"");
    double hbar = num(j, "hbar", 1.0), m = num(j, "m", 1.0);
    CustomModel cm;
    if (j.contains("expression")) {
      potentials::Params p;
      p.hbar = hbar;
      p.m = m;
      const json& pj = j.contains("params") ? j.at("params") : json::object();
      p.e2 = num(pj, "e2", p.e2);
      p.omega = num(pj, "omega", p.omega);
      p.g = num(pj, "g", p.g);
      if (pj.contains("a")) {
        double a = pj.at("a").get<double>();
        p.g = (4.0 * a * a - 1.0) * hbar * hbar / (8.0 * m);
      }
      p.amplitude = num(pj, "amplitude", p.amplitude);
      cm.pot = potentials::by_name(j.at("expression").get<std::string>(), p);
    } else if (j.contains("samples")) {
      const json& s = j.at("samples");
      const json& sing = j.contains("singular") ? j.at("singular") : json::object();
      cm.pot = potentials::tabulated(num(sing, "q0", 0.0), num(sing, "q1", 0.0), s.at("h").get<double>(),
                                     s.at("v").get<std::vector<double>>(), hbar, m);
    } else {
      throw ConfigError("custom model: need \"expression\" or \"samples\"");
    }
    if (!j.contains("frobenius")) throw ConfigError("custom model: \"frobenius\" data are required");
    const json& f = j.at("frobenius");
    cm.pot.frobenius = {f.at("s1").get<double>(), f.at("s2").get<double>(), f.value("log_flag", false)};
    if (j.contains("window")) {
      auto w = j.at("window").get<std::vector<double>>();
      if (w.size() != 2) throw ConfigError("custom model: window must have two entries");
      cm.window = std::make_pair(w[0], w[1]);
    }
    if (j.contains("lp_check_x")) cm.pot.lp_check_x = j.at("lp_check_x").get<double>();
    cm.ref_energy = num(j, "ref_energy", 0.0);
    cm.pot.validate();
    return cm;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("custom model: ") + e.what());
  }
}

CustomModel load_custom(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_custom(j);
}

}  // namespace ssae::io
