#include <string>
#include <vector>

#include "swarmsim/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return swarmsim::cli::run_cli(std::move(args));
}
