#include <iostream>

#include "dae/cli.hpp"

int main(int argc, char** argv) { return dae::cli_main(argc, argv, std::cout, std::cerr); }
