#include <iostream>

#include "nashsynth/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return nashsynth::run_command(args, std::cout, std::cerr);
}
