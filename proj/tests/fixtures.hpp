#pragma once

#include <complex>
#include <fstream>
#include <string>

#include "json.hpp"

namespace fixtures {

inline nlohmann::json load(const std::string& name) {
  std::ifstream in(std::string(SSAE_FIXTURE_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  return nlohmann::json::parse(in);
}

inline std::complex<double> cplx(const nlohmann::json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

inline double rel_err(std::complex<double> got, std::complex<double> want) {
  double d = std::abs(want);
  return std::abs(got - want) / (d > 0 ? d : 1.0);
}

}  // namespace fixtures
