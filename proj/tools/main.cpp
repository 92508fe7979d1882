#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return bessel_sd::cli::run(argc, argv, std::cout, std::cerr); }
