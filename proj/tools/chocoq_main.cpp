#include <vector>

#include "chocoq/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return chocoq::run_cli(args);
}
