#include <iostream>
#include <string>
#include <vector>

#include "polyapprox/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return polyapprox::run_cli(args, std::cout, std::cerr);
}
