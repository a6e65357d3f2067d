#include "plinf_cli.hpp"

int main(int argc, char** argv) {
  return plinf::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cin, std::cout, std::cerr);
}
