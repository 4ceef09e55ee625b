#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return resistnet::cli::run(argc, argv, std::cout, std::cerr); }
