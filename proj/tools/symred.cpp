#include <iostream>

#include "symred/cli.hpp"

int main(int argc, char** argv) { return symred::run_cli(argc, argv, std::cout, std::cerr); }
