#include <iostream>

#include "hopf/cli.hpp"

int main(int argc, char** argv) { return hopf::run_cli(argc, argv, std::cout, std::cerr); }
