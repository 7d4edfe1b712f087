#include <iostream>

#include "solgeo/cli.hpp"

int main(int argc, char** argv) { return solgeo::run_cli(argc, argv, std::cout, std::cerr); }
