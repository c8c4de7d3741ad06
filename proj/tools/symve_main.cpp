#include "symve/cli.hpp"

int main(int argc, char** argv) { return symve::cli::run(argc, argv); }
