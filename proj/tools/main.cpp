#include <iostream>

#include "redistrict/harness.hpp"

int main(int argc, char** argv) { return redistrict::cli_main(argc, argv, std::cout, std::cerr); }
