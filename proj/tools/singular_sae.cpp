#include "ssae/cli.hpp"

int main(int argc, char** argv) { return ssae::cli::main(argc, argv); }
