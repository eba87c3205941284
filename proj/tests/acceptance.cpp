#include <iostream>
#include "springer/acceptance.hpp"
int main() { return springer::run_acceptance(std::cout, {}) ? 0 : 1; }
