#include <iostream>
#include <string>
#include <vector>

#include "weightkit/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return weightkit::run_command(args, std::cout, std::cerr);
}
