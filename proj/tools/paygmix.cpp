#include <iostream>
#include <string>
#include <vector>

#include "paygmix/cli/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return paygmix::cli::run_main(args, std::cout, std::cerr);
}
