#include <iostream>
#include <string>
#include <vector>

#include "afc/cli/app.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return afc::cli::run(args, std::cout, std::cerr);
}
