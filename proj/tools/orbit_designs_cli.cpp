#include "orbitdesign/cli.hpp"

int main(int argc, char** argv) { return orbitdesign::cli::run(argc, argv); }
