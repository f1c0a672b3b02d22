#include "clamped_te/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return clamped_te::cli::run(args, std::cout, std::cerr);
}
