#include <iostream>

#include "probecli/app.hpp"

int main(int argc, char** argv) { return probecli::run(argc, argv, std::cout, std::cerr); }
