#include <iostream>

#include "qeuclid/cli.hpp"

int main(int argc, char** argv) { return qeuclid::run_cli(argc, argv, std::cout, std::cerr); }
