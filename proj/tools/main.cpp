#include <iostream>
#include <string>
#include <vector>

#include "pwexp/cli.hpp"

int main(int argc, char** argv) {
    return pwexp::cli::main_entry(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
