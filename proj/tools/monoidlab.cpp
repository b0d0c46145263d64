#include "monoidlab/cli.hpp"

int main(int argc, char** argv) { return monoidlab::run_cli(argc, argv); }
