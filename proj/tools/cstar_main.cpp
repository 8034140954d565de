#include "cstar/cli.hpp"

int main(int argc, char** argv) { return cstar::cli::main(argc, argv); }
