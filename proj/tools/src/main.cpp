#include <iostream>

#include "dfforge_cli/app.hpp"

int main(int argc, char** argv) { return dfforge::cli::run(argc, argv, std::cout, std::cerr); }
