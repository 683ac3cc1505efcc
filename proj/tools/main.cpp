#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return cyber_egt::cli::run(argc, argv, std::cout, std::cerr); }
