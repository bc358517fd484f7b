#include <iostream>
#include <string>
#include <vector>

#include "lne/cli.hpp"

int main(int argc, char** argv) {
    return lne::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
