#include <iostream>

#include "autocorr/cli.hpp"

int main(int argc, char** argv) { return autocorr::cli::run_cli(argc, argv, std::cout, std::cerr); }
