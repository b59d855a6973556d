#include <iostream>

#include "sqdeph/cli.hpp"

int main(int argc, char** argv) { return sqdeph::run_cli(argc, argv, std::cout, std::cerr); }
