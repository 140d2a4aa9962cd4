#include <iostream>
#include <string>
#include <vector>

#include "schurlab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return schurlab::run_command(args, std::cout, std::cerr);
}
