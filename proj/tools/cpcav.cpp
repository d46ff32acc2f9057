#include <iostream>

#include "cpcav/cli.hpp"

int main(int argc, char** argv) { return cpcav::cli::run(argc, argv, std::cout, std::cerr); }
