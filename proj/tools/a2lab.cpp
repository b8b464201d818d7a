#include <a2lab/cli.hpp>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return a2lab::cli::dispatch(args);
}
