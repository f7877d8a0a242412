#include <iostream>

#include "t2i/cli.hpp"

int main(int argc, char** argv) { return t2i::run_cli(argc, argv, std::cout, std::cerr); }
