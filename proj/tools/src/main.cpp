#include <iostream>

#include "abelkernel/cli/cli.hpp"

int main(int argc, char** argv) { return abelkernel::cli::main_entry(argc, argv, std::cout, std::cerr); }
