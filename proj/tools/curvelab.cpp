#include "curvelab/cli.hpp"

int main(int argc, char** argv) { return curvelab::cli::main(argc, argv); }
