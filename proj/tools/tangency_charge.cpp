#include <iostream>

#include "tangency/cli.hpp"

int main(int argc, char** argv) { return tangency::run_cli(argc, argv, std::cout, std::cerr); }
