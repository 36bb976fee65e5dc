#include <iostream>

#include "lpbm/app.hpp"

int main(int argc, char** argv) { return lpbm::run_cli(argc, argv, std::cout, std::cerr); }
