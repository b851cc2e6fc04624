#include <iostream>

#include "torusfhn/cli.hpp"

int main(int argc, char** argv) { return torusfhn::run_cli(argc, argv, std::cout, std::cerr); }
