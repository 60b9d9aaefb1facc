#include "mwlab/cli.hpp"

int main(int argc, char** argv) { return mwlab::cli::main(argc, argv); }
