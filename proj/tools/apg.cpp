#include "apg/cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return apg::cli::run_cli(argc, argv, std::cout, std::cerr); }
