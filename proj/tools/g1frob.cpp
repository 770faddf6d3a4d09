#include <iostream>

#include "g1f/cli.hpp"

int main(int argc, char** argv) { return g1f::run(argc, argv, std::cout, std::cerr); }
