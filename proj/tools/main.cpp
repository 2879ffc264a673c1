#include <iostream>
#include <string>
#include <vector>

#include "lsqlab_cli.hpp"

int main(int argc, char** argv) {
    return lsq::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
