#include <iostream>

#include "distplan/cli.hpp"

int main(int argc, char** argv) { return distplan::cli::run(argc, argv, std::cout, std::cerr); }
