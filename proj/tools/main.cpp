#include "noisemod/cli.hpp"

int main(int argc, char** argv) { return noisemod::cli_main(argc, argv); }
