#include "boxlab/cli.hpp"

int main(int argc, char** argv) { return boxlab::run_cli(argc, argv); }
