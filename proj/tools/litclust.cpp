#include "litclust/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return litclust::run_cli(argc, argv, std::cout, std::cerr);
}
