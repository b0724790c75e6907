#include "steinlab/cli.hpp"

int main(int argc, char** argv) { return steinlab::cli::main(argc, argv); }
