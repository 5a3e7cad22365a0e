#include "ridgecov/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return ridgecov::cli::run(argc, argv, std::cerr); }
