#include <iostream>

#include "sumgames/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return sumgames::cli::run(args, std::cout, std::cerr);
}
