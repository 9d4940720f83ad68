#include <iostream>

#include "mla/cli.hpp"

int main(int argc, char** argv) {
  return mla::cli::run(argc, argv, std::cout, std::cerr);
}
