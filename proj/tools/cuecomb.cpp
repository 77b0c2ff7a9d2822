#include <iostream>

#include "cuecomb/cli.hpp"

int main(int argc, char** argv) { return cuecomb::run_cli(argc, argv, std::cout, std::cerr); }
