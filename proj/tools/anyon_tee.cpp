#include "anyon/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return anyon::cli::run(argc, argv, std::cout, std::cerr); }
