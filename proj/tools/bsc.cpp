#include <iostream>

#include "bsc/cli.hpp"

int main(int argc, char** argv) { return bsc::run_cli(argc, argv, std::cout, std::cerr); }
