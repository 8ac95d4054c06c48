#include <iostream>

#include "swloc/cli.hpp"

int main(int argc, char** argv) { return swloc::cli::run(argc, argv, std::cout, std::cerr); }
