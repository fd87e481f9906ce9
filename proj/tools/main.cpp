#include <iostream>

#include "sphrd_cli/cli.hpp"

int main(int argc, char** argv) { return sphrd::cli::run(argc, argv, std::cout, std::cerr); }
