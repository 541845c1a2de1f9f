#include "steklov/cli.hpp"

int main(int argc, char** argv) { return steklov::cli::run_cli(argc, argv); }
