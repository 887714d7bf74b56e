#include "ldx/cli.hpp"

int main(int argc, char** argv) { return ldx::cli::run(argc, argv); }
