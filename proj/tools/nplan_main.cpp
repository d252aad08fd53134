#include <iostream>
#include <string>
#include <vector>

#include "nplan/cli/driver.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return nplan::cli::run(args, std::cout, std::cerr);
}
