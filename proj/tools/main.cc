#include <iostream>

#include "tvu/cli.hh"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return tvu::run_cli(args, std::cout, std::cerr);
}
