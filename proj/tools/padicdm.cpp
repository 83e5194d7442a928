#include <iostream>

#include "padicdm/cli.hpp"

int main(int argc, char** argv) { return padicdm::run_cli(argc, argv, std::cout, std::cerr); }
