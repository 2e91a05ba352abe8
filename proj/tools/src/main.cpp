#include <iostream>

#include "mordellh10_cli/cli.hpp"

int main(int argc, char** argv) { return mh10::cli::run(argc, argv, std::cout, std::cerr); }
