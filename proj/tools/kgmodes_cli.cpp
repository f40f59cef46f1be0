#include <iostream>

#include "kgmodes/cli/app.hpp"

int main(int argc, char** argv) { return kgm::cli::run(argc, argv, std::cout, std::cerr); }
