#include "fscheme/cli.hpp"

int main(int argc, char** argv) { return fscheme::cli::run(argc, argv); }
