#include <iostream>

#include "ordunit/cli.hpp"

int main(int argc, char** argv) { return ordunit::cli::main(argc, argv, std::cout, std::cerr); }
