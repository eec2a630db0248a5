#include <iostream>

#include "drtail/cli.hpp"

int main(int argc, char** argv) { return drtail::cli::dispatch(argc, argv, std::cout, std::cerr); }
