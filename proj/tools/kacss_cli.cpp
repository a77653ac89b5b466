#include <iostream>

#include "kacss/cli.hpp"

int main(int argc, char** argv) { return kacss::cli::run(argc, argv, std::cout, std::cerr); }
