#include "hpoincare_cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hpoincare::cli::run(argc, argv, std::cout, std::cerr); }
