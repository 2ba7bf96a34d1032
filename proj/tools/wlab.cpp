#include "wlab/commands.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return wlab::run_cli(argc, argv, std::cout, std::cerr);
}
