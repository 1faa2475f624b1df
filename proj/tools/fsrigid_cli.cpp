#include "fsrigid/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return fsrigid::cli_main(argc, argv, std::cout, std::cerr); }
