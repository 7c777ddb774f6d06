#include <iostream>
#include <variant>

#include "dcloc/cli.hpp"

int main(int argc, char** argv) {
  auto parsed = dcloc::cli::parse_arguments(argc, argv, std::cout, std::cerr);
  if (const int* code = std::get_if<int>(&parsed)) return *code;
  return dcloc::cli::run(std::get<dcloc::cli::RunManifest>(parsed), std::cout, std::cerr);
}
