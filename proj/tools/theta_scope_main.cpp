#include <iostream>
#include <string>
#include <vector>

#include "thetascope/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return thetascope::cli::run(args, std::cout, std::cerr);
}
