#include <iostream>

#include "bsl/cli/commands.hpp"

int main(int argc, char** argv) {
    return bsl::cli::run(argc, argv, std::cout, std::cerr);
}
