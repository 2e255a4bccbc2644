#include <iostream>

#include "lgp/cli/commands.hpp"

int main(int argc, char** argv) { return lgp::cli::run(argc, argv, std::cout, std::cerr); }
