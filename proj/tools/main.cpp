#include "asaw/cli.hpp"

int main(int argc, char** argv) { return asaw::cli::run(argc, argv); }
