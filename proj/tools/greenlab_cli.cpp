#include "greenlab/cli.hpp"

int main(int argc, char** argv) { return greenlab::run_cli(argc, argv); }
