#include "lienard/cli.hpp"

int main(int argc, char** argv) { return lienard::cli::main_entry(argc, argv); }
