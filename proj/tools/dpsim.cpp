#include "dpsim/cli.hpp"

int main(int argc, char** argv) { return dpsim::run_cli(argc, argv); }
