// One PASS/FAIL line per acceptance criterion, each with its runtime budget.
#include <cstdio>

#include "ssae/verify.hpp"

int main() {
  struct Criterion {
    int id;
    const char* check;
    double budget_s;
  };
  const Criterion list[] = {{1, "friedrichs", 1.0}, {2, "oscillator_special", 1.0}, {3, "ho_limit", 5.0},
                            {4, "theorem", 120.0},  {5, "unitarity", 10.0},        {6, "closed_vs_matrix", 10.0},
                            {7, "oracle", 120.0},   {8, "specfun", 1.0},           {9, "wronskian", 5.0}};
  ssae::verify::Options opt;
  opt.fixture_dir = SSAE_FIXTURE_DIR;
  int failed = 0;
  for (const auto& c : list) {
    auto r = ssae::verify::run_check(c.check, opt);
    bool in_time = r.seconds < c.budget_s;
    bool ok = r.passed && in_time;
    failed += !ok;
    std::printf("%s criterion %d (%s): max deviation %.3g, tolerance %.0e, %.2f s of %.0f s%s\n    %s\n",
                ok ? "PASS" : "FAIL", c.id, c.check, r.metric, r.tolerance, r.seconds, c.budget_s,
                in_time ? "" : " [over budget]", r.detail.c_str());
  }
  std::printf("%d of 9 criteria passed\n", 9 - failed);
  return failed ? 1 : 0;
}
