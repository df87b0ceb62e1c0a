#pragma once

// singular-sae command-line front end: spectrum, scatter, sweep, verify.
// Exit codes: 0 ok, 1 failed verification, 2 configuration error,
// 3 solver error.

#include <string>
#include <vector>

namespace ssae::cli {

/// `args` excludes the program name.
int run(const std::vector<std::string>& args);

int main(int argc, char** argv);

}  // namespace ssae::cli
