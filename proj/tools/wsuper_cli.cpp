#include <iostream>

#include "wsuper/cli.hpp"

int main(int argc, char** argv) { return wsuper::cli::run(argc, argv, std::cout, std::cerr); }
