#include <iostream>

#include "lzgram/cli.hpp"

int main(int argc, char** argv) { return lzgram::cli::run(argc, argv, std::cout, std::cerr); }
