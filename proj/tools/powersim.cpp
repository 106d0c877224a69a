#include <iostream>

#include "powersim/cli.hpp"

int main(int argc, char** argv) { return powersim::run_cli(argc, argv, std::cout, std::cerr); }
