#include <iostream>

#include "tabp/cli.hpp"

int main(int argc, char** argv) {
    return tabp::cli::run(argc, argv, std::cout, std::cerr);
}
