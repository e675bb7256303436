#include "lipfree/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return lipfree::cli::main(argc, argv, std::cout, std::cerr); }
