#include <iostream>
#include <string>
#include <vector>

#include "hawkes/cli/app.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hawkes::cli::run(args, std::cout, std::cerr);
}
