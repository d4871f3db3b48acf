#include "locpovm/cli.hpp"

int main(int argc, char** argv) { return locpovm::cli_main(argc, argv); }
