#include <iostream>
#include <string>
#include <vector>

#include "afftop/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return afftop::run_cli(args, std::cout, std::cerr);
}
