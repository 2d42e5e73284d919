#include "wignerlab/cli.hpp"

int main(int argc, char** argv) { return wignerlab::cli::run(argc, argv); }
