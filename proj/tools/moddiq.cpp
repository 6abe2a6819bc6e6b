#include <iostream>
#include <string>
#include <vector>

#include <moddiq/cli.hpp>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return moddiq::run_command(args, std::cout, std::cerr);
}
