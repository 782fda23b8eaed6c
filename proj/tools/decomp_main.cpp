#include <iostream>
#include <string>
#include <vector>

#include "decomp/model_io.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return decomp::cli(args, std::cout, std::cerr);
}
