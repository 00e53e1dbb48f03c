#include "tfc/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return tfc::cli::run(argc, argv, std::cout, std::cerr); }
