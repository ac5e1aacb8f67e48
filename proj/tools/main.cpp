#include "smakit_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return smakit::cli::cli_dispatch(std::move(args), std::cout, std::cerr);
}
