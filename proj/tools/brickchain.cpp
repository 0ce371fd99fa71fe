#include <iostream>

#include "brickchain/cli.hpp"

int main(int argc, char** argv) { return brickchain::cli::run(argc, argv, std::cout, std::cerr); }
