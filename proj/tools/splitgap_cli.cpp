#include <iostream>

#include "splitgap/cli.hpp"

int main(int argc, char** argv) { return splitgap::cli::run(argc, argv, std::cout, std::cerr); }
