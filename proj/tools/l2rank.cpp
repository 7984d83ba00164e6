#include "l2rank/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return l2rank::run_cli(argc, argv, std::cout, std::cerr); }
