#include <iostream>

#include "jetmorse/cli.hpp"

int main(int argc, char** argv) { return jetmorse::run_cli(argc, argv, std::cout, std::cerr); }
