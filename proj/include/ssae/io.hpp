#pragma once

// Output tables (CSV with 17 significant digits, JSON mirroring the CSV
// fields plus a config echo), atomic file writes and the custom-potential
// descriptor format.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ssae/generic.hpp"
#include "ssae/spectrum.hpp"

namespace ssae::io {

using nlohmann::json;

/// Round-trip safe: printf("%.17g").
std::string fmt(double v);

/// Writes to a temporary file in the same directory and renames it over
/// `path`, so a failed run never leaves a partial file.  Empty path or "-"
/// writes to stdout.
void write_atomic(const std::string& path, const std::string& content);

json extension_json(const ExtensionSpec& s);

std::string spectrum_csv(const SpectrumResult& r);
json spectrum_json(const SpectrumResult& r, const json& config);

struct ScatterRow {
  double k;
  Complex T;
  Complex R;
  double defect;
};
std::string scatter_csv(const std::vector<ScatterRow>& rows);
json scatter_json(const std::vector<ScatterRow>& rows, const json& config);

struct SweepRow {
  double theta_plus;
  double theta_minus;
  int n;
  double E;
};
std::string sweep_csv(const std::vector<SweepRow>& rows);
json sweep_json(const std::vector<SweepRow>& rows, const json& config);

/// Spectral flow: one polyline per level index over the sweep nodes.
std::string sweep_svg(const std::vector<SweepRow>& rows, const std::string& title);

/// A custom model read from a JSON descriptor:
///   {"type": "custom",
///    "frobenius": {"s1": .., "s2": .., "log_flag": ..},
///    "window": [E_lo, E_hi],
///    "expression": "oscinv_gauss", "params": {"omega": .., "g": .., "amplitude": ..}
///      or
///    "samples": {"h": .., "v": [..]}, "singular": {"q0": .., "q1": ..},
///    "hbar": .., "m": .., "ref_energy": ..}
struct CustomModel {
  generic::CustomPotential pot;
  std::optional<std::pair<double, double>> window;
  double ref_energy = 0.0;
};
CustomModel parse_custom(const json& j);
CustomModel load_custom(const std::string& path);

}  // namespace ssae::io
