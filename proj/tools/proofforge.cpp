#include "proofforge/cli.hpp"

int main(int argc, char** argv) { return proofforge::run_cli(argc, argv); }
