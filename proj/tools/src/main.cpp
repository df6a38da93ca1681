#include <iostream>

#include "spelect/cli.hpp"

int main(int argc, char** argv) { return spelect::run_cli(argc, argv, std::cout, std::cerr); }
