#include <iostream>

#include "tbound/cli.hpp"

int main(int argc, char** argv) { return tbound::cli::run(argc, argv, std::cout, std::cerr); }
