#include <iostream>

#include "formes/cli.hpp"

int main(int argc, char** argv)
{
    return formes::cli::run(argc, argv, std::cout, std::cerr);
}
