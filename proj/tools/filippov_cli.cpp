#include <iostream>

#include "filippov/cli.hpp"

int main(int argc, char** argv) { return filippov::run_cli(argc, argv, std::cout, std::cerr); }
