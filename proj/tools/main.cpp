#include <iostream>
#include <string>
#include <vector>

#include <plsim/cli.hpp>

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    return plsim::cli::run(args, std::cout, std::cerr);
}
