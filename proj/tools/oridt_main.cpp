#include <iostream>

#include "oridt/cli.hpp"

int main(int argc, char** argv) { return oridt::run_cli(argc, argv, std::cout, std::cerr); }
