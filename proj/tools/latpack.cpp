#include <iostream>

#include "latpack/cli.hpp"

int main(int argc, char** argv) { return latpack::cli_main(argc, argv, std::cout, std::cerr); }
