#include <iostream>

#include "cli/run.hpp"

int main(int argc, char** argv) { return hbcli::run_main(argc, argv, std::cout, std::cerr); }
