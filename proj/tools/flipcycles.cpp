#include <iostream>

#include "flipcycles/harness.hpp"

int main(int argc, char** argv) {
    const auto r = flipcycles::harness::run(std::vector<std::string>(argv + 1, argv + argc));
    std::cout << r.out;
    std::cerr << r.err;
    return r.status;
}
