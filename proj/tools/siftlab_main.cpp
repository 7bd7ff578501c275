#include <string>
#include <vector>

#include "siftlab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return siftlab::cli::run(std::move(args));
}
