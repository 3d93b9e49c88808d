#include "geomint/harness.hpp"

int main(int argc, char** argv) { return geomint::cli_main(argc, argv); }
