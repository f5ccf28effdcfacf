#include <iostream>

#include "orbitrep/cli.hpp"

int main(int argc, char** argv) { return orbitrep::run({argv, argv + argc}, std::cout, std::cerr); }
