#include <iostream>

#include "orislink/cli.hpp"

int main(int argc, char** argv) { return orislink::cli::run(argc, argv, std::cout, std::cerr); }
