#include <iostream>
#include <string>
#include <vector>

#include "jetlaw/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return jetlaw::cli::run(args, std::cin, std::cout, std::cerr);
}
