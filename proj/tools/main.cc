#include <unistd.h>

#include <cstdlib>
#include <cstring>
#include <iostream>

#include "commands.h"

int main(int argc, char** argv) {
  const char* setting = std::getenv("EASPEC_COLOR");
  bool color = isatty(STDERR_FILENO) != 0 && (setting == nullptr || std::strcmp(setting, "0") != 0);
  return easpec::cli::Main(argc, argv, {std::cout, std::cerr, color});
}
