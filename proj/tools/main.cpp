#include <iostream>
#include <string>
#include <vector>

#include "besselmu/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return besselmu::run_cli(args, std::cout, std::cerr);
}
