#include <iostream>

#include "broadband/capacity_cli.hpp"

int main(int argc, char** argv) { return broadband::cli::main_entry(argc, argv, std::cout, std::cerr); }
