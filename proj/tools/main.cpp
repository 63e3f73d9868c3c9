#include <exception>
#include <iostream>

#include "fks/harness.hpp"

int main(int argc, char** argv) {
  const fks::ParseResult parsed =
      fks::parseCommandLine(argc, argv, std::cout, std::cerr);
  if (parsed.exitCode >= 0) return parsed.exitCode;
  try {
    fks::runCase(parsed.options, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
