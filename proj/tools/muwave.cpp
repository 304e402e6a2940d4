#include "muwave/cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return muwave::cli::run_main(argc, argv, std::cout, std::cerr); }
