#include <iostream>

#include "starnls/acceptance.hpp"

int main() {
    return starnls::acceptance::run_all(std::cout) ? 0 : 1;
}
