#include <string>
#include <vector>

#include "dafermos/cli.hpp"

int main(int argc, char** argv) {
  return dafermos::cli::main_entry(std::vector<std::string>(argv + 1, argv + argc));
}
