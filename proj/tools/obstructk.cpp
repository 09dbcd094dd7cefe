#include <iostream>

#include "obstructk/cli.hpp"

int main(int argc, char** argv) { return obstructk::cli::run(argc, argv, std::cout, std::cerr); }
