#include <iostream>

#include "spherewf_cli/cli.hpp"

int main(int argc, char** argv) { return spherewf::cli::run(argc, argv, std::cout, std::cerr); }
