#include <iostream>

#include "plumbing/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return plumbing::run(args, std::cout, std::cerr);
}
